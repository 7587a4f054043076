#include "hgpdc/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgpdc/errors.hpp"

namespace hgpdc {

namespace {

constexpr cdouble kMinusI{0.0, -1.0};

void derivative(const PropagatorState& y, const CMatrix& k1, const CMatrix& k2,
                StateDerivative& d) {
  // k1 = -i G~1^T / hbar (N_s x N_i), k2 = -i G~2^T / hbar (N_i x N_s)
  d.dA.noalias() = k1 * y.D.conjugate();
  d.dB.noalias() = k1 * y.C.conjugate();
  d.dC.noalias() = k2 * y.B.conjugate();
  d.dD.noalias() = k2 * y.A.conjugate();
}

void axpy(const PropagatorState& y, double h, const StateDerivative& d, PropagatorState& out) {
  out.A = y.A + h * d.dA;
  out.B = y.B + h * d.dB;
  out.C = y.C + h * d.dC;
  out.D = y.D + h * d.dD;
}

bool finite(const PropagatorState& y) {
  return std::isfinite(y.A.squaredNorm()) && std::isfinite(y.B.squaredNorm()) &&
         std::isfinite(y.C.squaredNorm()) && std::isfinite(y.D.squaredNorm());
}

void check_shapes(const PropagatorState& s) {
  const auto ns = s.A.rows();
  const auto ni = s.C.rows();
  if (s.A.cols() != ns || s.C.cols() != ni || s.B.rows() != ns || s.B.cols() != ni ||
      s.D.rows() != ni || s.D.cols() != ns) {
    throw DimensionMismatch("propagator state blocks have inconsistent shapes");
  }
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(t1 > t0)) throw ConfigError("integration window must satisfy t1 > t0");
  if (steps < 16) throw ConfigError("integration needs at least 16 steps");
  if (!(constraint_tolerance > 0.0)) throw ConfigError("constraint tolerance must be positive");
  if (record_interval < 0) throw ConfigError("record interval must be non-negative");
}

double ConstraintResiduals::worst() const { return std::max({aa, bb, ab}); }

TimeWindow interaction_window(const WaveguideModel& wg, const PumpSpec& pump, double pump_margin,
                              double crystal_margin) {
  const double pulse = pump_margin / pump.sigma;
  const double transit = wg.length / wg.pump.vg;
  if (wg.poling.kind == PhasematchingKind::sinc_qpm) return {-pulse, transit + pulse};
  const double half = crystal_margin * wg.poling.gaussian_width_factor * transit + pulse;
  return {-half, half};
}

IntegrationConfig default_integration(const WaveguideModel& wg, const PumpSpec& pump) {
  const TimeWindow w = interaction_window(wg, pump);
  IntegrationConfig cfg;
  cfg.t0 = w.t0;
  cfg.t1 = w.t1;
  return cfg;
}

PropagatorState init_state(const FrequencyGrid& grid, double t0) {
  const auto ns = grid.signal.size();
  const auto ni = grid.idler.size();
  PropagatorState s;
  s.A = CMatrix::Identity(ns, ns);
  s.B = CMatrix::Zero(ns, ni);
  s.C = CMatrix::Identity(ni, ni);
  s.D = CMatrix::Zero(ni, ns);
  s.t = t0;
  return s;
}

StateDerivative rhs(const PropagatorState& state, const KernelSnapshot& kernels,
                    const FrequencyGrid& grid) {
  check_shapes(state);
  const auto ns = grid.signal.size();
  const auto ni = grid.idler.size();
  if (state.A.rows() != ns || state.C.rows() != ni || kernels.g1.rows() != ni ||
      kernels.g1.cols() != ns || kernels.g2.rows() != ns || kernels.g2.cols() != ni) {
    throw DimensionMismatch("kernel snapshot, state and grid dimensions disagree");
  }
  const double tol = 1e-9 * std::max(std::abs(state.t), 1e-15);
  if (std::abs(kernels.time - state.t) > tol)
    throw NumericalError("kernel snapshot time differs from state time");

  const RVector sw = grid.signal.weights.cwiseSqrt();
  const RVector iw = grid.idler.weights.cwiseSqrt();
  const CMatrix g1w = iw.asDiagonal() * kernels.g1 * sw.asDiagonal();
  const CMatrix g2w = sw.asDiagonal() * kernels.g2 * iw.asDiagonal();
  const CMatrix k1 = (kMinusI / kernels.hbar) * g1w.transpose();
  const CMatrix k2 = (kMinusI / kernels.hbar) * g2w.transpose();

  StateDerivative d;
  derivative(state, k1, k2, d);
  return d;
}

ConstraintResiduals constraint_residuals(const PropagatorState& s) {
  check_shapes(s);
  const auto ns = s.A.rows();
  const auto ni = s.C.rows();
  ConstraintResiduals r;
  CMatrix aa = s.A * s.A.adjoint();
  aa.noalias() -= s.B * s.B.adjoint();
  aa -= CMatrix::Identity(ns, ns);
  r.aa = aa.norm() / std::sqrt(static_cast<double>(ns));

  CMatrix bb = s.C * s.C.adjoint();
  bb.noalias() -= s.D * s.D.adjoint();
  bb -= CMatrix::Identity(ni, ni);
  r.bb = bb.norm() / std::sqrt(static_cast<double>(ni));

  const CMatrix ad = s.A * s.D.transpose();
  CMatrix ab = ad;
  ab.noalias() -= s.B * s.C.transpose();
  r.ab = ab.norm() / std::max(1.0, ad.norm());
  return r;
}

EvolveResult evolve(const CouplingSource& couplings, PropagatorState y,
                    const IntegrationConfig& cfg) {
  cfg.validate();
  check_shapes(y);
  const double h = (cfg.t1 - cfg.t0) / cfg.steps;
  y.t = cfg.t0;

  // Couplings are needed at t0 + j h / 2; they are generated in batches so the
  // pump quadrature runs as one matrix product per batch.
  constexpr int kBatch = 64;
  std::vector<double> times;
  std::vector<CMatrix> batch;
  int base = 0;
  auto fill = [&](int first) {
    const int last = std::min(first + kBatch, 2 * cfg.steps + 1);
    times.resize(static_cast<std::size_t>(last - first));
    for (int j = first; j < last; ++j) {
      // Half-steps are indexed, not accumulated, to keep times bit-stable.
      times[static_cast<std::size_t>(j - first)] = cfg.t0 + 0.5 * h * j;
    }
    couplings(times, batch);
    if (batch.size() != times.size()) throw DimensionMismatch("coupling source returned a short batch");
    for (auto& k : batch) k *= kMinusI;
    base = first;
  };
  fill(0);

  EvolveResult result;
  StateDerivative k1, k2, k3, k4;
  PropagatorState tmp = y;
  CMatrix start_t, mid_t, end_t;

  for (int n = 0; n < cfg.steps; ++n) {
    if (2 * n + 2 >= base + static_cast<int>(batch.size())) fill(2 * n);
    const CMatrix& ks = batch[static_cast<std::size_t>(2 * n - base)];
    const CMatrix& km = batch[static_cast<std::size_t>(2 * n + 1 - base)];
    const CMatrix& ke = batch[static_cast<std::size_t>(2 * n + 2 - base)];
    start_t = ks.transpose();
    mid_t = km.transpose();
    end_t = ke.transpose();

    derivative(y, ks, start_t, k1);
    axpy(y, 0.5 * h, k1, tmp);
    derivative(tmp, km, mid_t, k2);
    axpy(y, 0.5 * h, k2, tmp);
    derivative(tmp, km, mid_t, k3);
    axpy(y, h, k3, tmp);
    derivative(tmp, ke, end_t, k4);

    const double w = h / 6.0;
    y.A += w * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA);
    y.B += w * (k1.dB + 2.0 * k2.dB + 2.0 * k3.dB + k4.dB);
    y.C += w * (k1.dC + 2.0 * k2.dC + 2.0 * k3.dC + k4.dC);
    y.D += w * (k1.dD + 2.0 * k2.dD + 2.0 * k3.dD + k4.dD);
    y.t = cfg.t0 + h * (n + 1);

    if (!finite(y)) {
      std::ostringstream msg;
      msg << "state became non-finite at t = " << y.t << " s (step " << n + 1 << ")";
      throw NonFiniteState(msg.str());
    }
    const bool last = n + 1 == cfg.steps;
    if (last || (cfg.record_interval > 0 && (n + 1) % cfg.record_interval == 0)) {
      result.trajectory.push_back({y.t, constraint_residuals(y), y.D.norm()});
    }
  }

  result.residuals = result.trajectory.back().residuals;
  result.constraints_ok = result.residuals.worst() <= cfg.constraint_tolerance;
  result.state = std::move(y);
  if (!result.constraints_ok && cfg.throw_on_violation) {
    std::ostringstream msg;
    msg << "commutation constraints violated: worst residual " << result.residuals.worst()
        << " exceeds tolerance " << cfg.constraint_tolerance;
    throw ConstraintViolation(msg.str(), result.residuals.worst());
  }
  return result;
}

EvolveResult evolve(const KernelFactory& factory, const IntegrationConfig& cfg) {
  CouplingSource source = [&factory](std::span<const double> times, std::vector<CMatrix>& out) {
    factory.weighted_couplings(times, out);
  };
  return evolve(source, init_state(factory.grid(), cfg.t0), cfg);
}

}  // namespace hgpdc
