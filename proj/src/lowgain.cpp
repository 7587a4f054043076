#include "hgpdc/lowgain.hpp"

#include <cmath>
#include <numbers>

#include "hgpdc/errors.hpp"

namespace hgpdc {

CMatrix AnalyticJsa::weighted() const {
  const RVector s = signal_weights.cwiseSqrt();
  const RVector i = idler_weights.cwiseSqrt();
  return s.asDiagonal() * matrix * i.asDiagonal();
}

AnalyticJsa analytic_jsa(const WaveguideModel& wg, const PumpSpec& pump, const FrequencyGrid& grid) {
  const auto& pc = wg.constants;
  const double ng = wg.pump.ng * wg.signal.ng * wg.idler.ng;
  const double scale = gamma_p(pump, pc) * wg.overlap / pc.c;
  const cdouble minus_i{0.0, -1.0};

  AnalyticJsa out;
  out.signal_weights = grid.signal.weights;
  out.idler_weights = grid.idler.weights;
  out.zeta_center = minus_i * scale * std::sqrt(wg.signal.omega0 * wg.idler.omega0 * ng);
  out.matrix.resize(grid.signal.size(), grid.idler.size());
  for (Eigen::Index i = 0; i < grid.idler.size(); ++i) {
    const double wi = grid.idler.node(i);
    for (Eigen::Index s = 0; s < grid.signal.size(); ++s) {
      const double ws = grid.signal.node(s);
      const cdouble zeta = minus_i * scale * std::sqrt(ws * wi * ng);
      out.matrix(s, i) = zeta * pump_envelope(pump, ws + wi) * phasematching_value(wg, ws, wi, ws + wi);
    }
  }
  return out;
}

namespace {

double purity_of(const CMatrix& m) {
  const RVector sv = Eigen::BDCSVD<CMatrix>(m).singularValues();
  const RVector p = sv.cwiseAbs2() / sv.squaredNorm();
  return p.squaredNorm();
}

}  // namespace

LowgainReport compare_lowgain(const SecondMoment& sim, const AnalyticJsa& oracle) {
  if (sim.matrix.rows() != oracle.matrix.rows() || sim.matrix.cols() != oracle.matrix.cols())
    throw DimensionMismatch("oracle and simulated moment have different shapes");
  const SpectralMetrics sm = metrics(schmidt_decompose(sim));
  if (sm.gain_db > 1.0)
    throw RegimeError("low-gain oracle is invalid at " + std::to_string(sm.gain_db) + " dB");

  const CMatrix jw = oracle.weighted();
  const double ms = sim.matrix.cwiseAbs().maxCoeff();
  const double js = jw.cwiseAbs().maxCoeff();
  LowgainReport r;
  r.shape_error = (sim.matrix / ms - jw / js).cwiseAbs().maxCoeff();
  r.scale_error = sim.matrix.norm() / jw.norm() - 1.0;
  r.oracle_purity = purity_of(jw);
  r.sim_purity = sm.purity;
  r.sim_gain_db = sm.gain_db;
  return r;
}

double jsa_orientation_deg(const CMatrix& jsa, const FrequencyGrid& grid) {
  const double radius = 0.5 * std::min(grid.signal.span(), grid.idler.span());
  double w = 0.0, ss = 0.0, ii = 0.0, si = 0.0, ms = 0.0, mi = 0.0;
  for (Eigen::Index i = 0; i < grid.idler.size(); ++i) {
    const double di = grid.idler.detuning[i];
    for (Eigen::Index s = 0; s < grid.signal.size(); ++s) {
      const double ds = grid.signal.detuning[s];
      if (ds * ds + di * di > radius * radius) continue;
      const double q = std::norm(jsa(s, i));
      w += q;
      ms += q * ds;
      mi += q * di;
      ss += q * ds * ds;
      ii += q * di * di;
      si += q * ds * di;
    }
  }
  if (!(w > 0.0)) throw EmptySpectrum("JSA vanishes inside the inscribed disk");
  ms /= w;
  mi /= w;
  const double css = ss / w - ms * ms;
  const double cii = ii / w - mi * mi;
  const double csi = si / w - ms * mi;
  double deg = 0.5 * std::atan2(2.0 * csi, css - cii) * 180.0 / std::numbers::pi;
  if (deg <= -90.0) deg += 180.0;
  return deg;
}

}  // namespace hgpdc
