#include "hgpdc/kernel.hpp"

#include <cmath>
#include <numbers>

namespace hgpdc {

KernelFactory::KernelFactory(WaveguideModel wg, PumpSpec pump, FrequencyGrid grid)
    : wg_(std::move(wg)), pump_(std::move(pump)), grid_(std::move(grid)) {
  wg_.validate();
  pump_.validate();

  const Eigen::Index ni = grid_.idler.size();
  const Eigen::Index ns = grid_.signal.size();
  const Eigen::Index np = grid_.pump.size();
  const double grating = wg_.poling.grating_wavevector();

  // The residual mismatch is affine in the three detunings; build it from
  // detunings so the large carrier terms cancel exactly.
  const double dk_center = wg_.pump.k0 + (pump_.omega0 - wg_.pump.omega0) / wg_.pump.vg -
                           wg_.signal.k0 - wg_.idler.k0 - grating;

  table_.resize(ni * ns, np);
  for (Eigen::Index p = 0; p < np; ++p) {
    const double dp = grid_.pump.detuning[p];
    const double w_alpha = grid_.pump.weights[p] * pump_envelope(pump_, grid_.pump.node(p));
    const double pump_part = dk_center + dp / wg_.pump.vg;
    for (Eigen::Index s = 0; s < ns; ++s) {
      const double signal_part = pump_part - grid_.signal.detuning[s] / wg_.signal.vg;
      for (Eigen::Index i = 0; i < ni; ++i) {
        const double residual = signal_part - grid_.idler.detuning[i] / wg_.idler.vg;
        table_(i + ni * s, p) = w_alpha * phasematching_of_mismatch(wg_, residual);
      }
    }
  }

  const auto& pc = wg_.constants;
  const double scale = wg_.overlap * pc.hbar * gamma_p(pump_, pc) / (2.0 * std::numbers::pi * pc.c);
  const double ng = wg_.pump.ng * wg_.signal.ng * wg_.idler.ng;
  prefactor_.resize(ni, ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      prefactor_(i, s) = scale * std::sqrt(grid_.signal.node(s) * grid_.idler.node(i) * ng);
    }
  }
  carrier_offset_ = pump_.omega0 - wg_.signal.omega0 - wg_.idler.omega0;

  weighted_prefactor_.resize(ni, ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      weighted_prefactor_(i, s) = prefactor_(i, s) *
                                  std::sqrt(grid_.idler.weights[i] * grid_.signal.weights[s]) /
                                  pc.hbar;
    }
  }
}

CMatrix KernelFactory::raw_quadrature(std::span<const double> times) const {
  const Eigen::Index np = grid_.pump.size();
  const auto nt = static_cast<Eigen::Index>(times.size());
  CMatrix phases(np, nt);
  for (Eigen::Index n = 0; n < nt; ++n) {
    for (Eigen::Index p = 0; p < np; ++p) {
      phases(p, n) = std::polar(1.0, -(grid_.pump.detuning[p] + carrier_offset_) * times[n]);
    }
  }
  CMatrix q(table_.rows(), nt);
  q.noalias() = table_ * phases;
  return q;
}

cdouble KernelFactory::pump_quadrature(Eigen::Index idler, Eigen::Index signal, double t) const {
  const Eigen::Index ni = grid_.idler.size();
  cdouble acc = 0.0;
  for (Eigen::Index p = 0; p < grid_.pump.size(); ++p) {
    acc += table_(idler + ni * signal, p) *
           std::polar(1.0, -(grid_.pump.detuning[p] + carrier_offset_) * t);
  }
  const double outer = (grid_.idler.detuning[idler] + grid_.signal.detuning[signal]) * t;
  return acc * std::polar(1.0, outer);
}

KernelSnapshot KernelFactory::kernel_at(double t) const {
  const Eigen::Index ni = grid_.idler.size();
  const Eigen::Index ns = grid_.signal.size();
  const double times[] = {t};
  const CMatrix q = raw_quadrature(times);

  KernelSnapshot snap;
  snap.time = t;
  snap.hbar = wg_.constants.hbar;
  snap.g1.resize(ni, ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      const double outer = (grid_.idler.detuning[i] + grid_.signal.detuning[s]) * t;
      snap.g1(i, s) = prefactor_(i, s) * q(i + ni * s, 0) * std::polar(1.0, outer);
    }
  }
  // Eq. for g2 is g1 with the signal/idler roles exchanged; the integrand is shared.
  snap.g2 = snap.g1.transpose();
  return snap;
}

void KernelFactory::weighted_couplings(std::span<const double> times,
                                       std::vector<CMatrix>& out) const {
  const Eigen::Index ni = grid_.idler.size();
  const Eigen::Index ns = grid_.signal.size();
  const CMatrix q = raw_quadrature(times);

  CVector idler_phase(ni), signal_phase(ns);
  CMatrix g(ni, ns);
  out.resize(times.size());
  for (std::size_t n = 0; n < times.size(); ++n) {
    const double t = times[n];
    for (Eigen::Index i = 0; i < ni; ++i) idler_phase[i] = std::polar(1.0, grid_.idler.detuning[i] * t);
    for (Eigen::Index s = 0; s < ns; ++s) signal_phase[s] = std::polar(1.0, grid_.signal.detuning[s] * t);
    const auto column = q.col(static_cast<Eigen::Index>(n));
    for (Eigen::Index s = 0; s < ns; ++s) {
      for (Eigen::Index i = 0; i < ni; ++i) {
        g(i, s) = weighted_prefactor_(i, s) * column[i + ni * s] * (idler_phase[i] * signal_phase[s]);
      }
    }
    out[n] = g.transpose();
  }
}

}  // namespace hgpdc
