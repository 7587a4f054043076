#pragma once

// Coupling kernels of the Heisenberg equations for the slowly varying
// signal/idler operators. g1[i, s] couples idler frequency i to signal
// frequency s; g2[s, i] is its partner with roles swapped.

#include <span>
#include <vector>

#include "hgpdc/grid.hpp"
#include "hgpdc/physics.hpp"
#include "hgpdc/types.hpp"

namespace hgpdc {

struct KernelSnapshot {
  CMatrix g1;  // N_i x N_s, continuum values (J s / (rad/s))
  CMatrix g2;  // N_s x N_i
  double time = 0.0;
  double hbar = kCodata.hbar;
};

/// Caches alpha(omega_p) * phi(omega_s, omega_i, omega_p) * w_p on the full
/// (idler, signal, pump) grid so that only the time phase varies per call.
class KernelFactory {
public:
  KernelFactory(WaveguideModel wg, PumpSpec pump, FrequencyGrid grid);

  const WaveguideModel& waveguide() const { return wg_; }
  const PumpSpec& pump() const { return pump_; }
  const FrequencyGrid& grid() const { return grid_; }

  KernelSnapshot kernel_at(double t) const;

  /// Pump-axis quadrature sum_p w_p alpha(w_p) phi(w_s, w_i, w_p) exp(-i(w_p - w_i - w_s) t)
  /// for one (idler, signal) node pair.
  cdouble pump_quadrature(Eigen::Index idler, Eigen::Index signal, double t) const;

  /// Weighted couplings K(t) = diag(sqrt w_s) g1(t)^T diag(sqrt w_i) / hbar for a
  /// batch of times, written into `out` (resized to times.size()).
  void weighted_couplings(std::span<const double> times, std::vector<CMatrix>& out) const;

private:
  CMatrix raw_quadrature(std::span<const double> times) const;

  WaveguideModel wg_;
  PumpSpec pump_;
  FrequencyGrid grid_;
  CMatrix table_;       // (N_i * N_s) x N_p, row index i + N_i * s
  Eigen::MatrixXd prefactor_;  // N_i x N_s: M hbar gamma_p / (2 pi c) sqrt(w_s w_i n_p n_s n_i)
  Eigen::MatrixXd weighted_prefactor_;  // prefactor * sqrt(w_i w_s) / hbar
  double carrier_offset_ = 0.0;  // omega_p0 - omega_s0 - omega_i0
};

}  // namespace hgpdc
