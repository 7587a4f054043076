#pragma once

// Fixed-step RK4 integration of the coupled equations for the weighted
// Bogoliubov matrices A, B, C, D.
//
// Weighted convention: a continuum kernel F(w, w') is stored as
// diag(sqrt w) F diag(sqrt w'), so frequency integrals become matrix products,
// the delta-function initial condition becomes the identity, and the
// commutation constraints become exact matrix identities.

#include <functional>
#include <span>
#include <vector>

#include "hgpdc/kernel.hpp"
#include "hgpdc/types.hpp"

namespace hgpdc {

struct PropagatorState {
  CMatrix A;  // N_s x N_s
  CMatrix B;  // N_s x N_i
  CMatrix C;  // N_i x N_i
  CMatrix D;  // N_i x N_s
  double t = 0.0;
};

struct StateDerivative {
  CMatrix dA, dB, dC, dD;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
};

struct IntegrationConfig {
  double t0 = 0.0;
  double t1 = 0.0;
  int steps = 2048;
  double constraint_tolerance = 1e-3;
  int record_interval = 0;  // 0 records only the final state
  bool throw_on_violation = true;

  void validate() const;
};

struct ConstraintResiduals {
  double aa = 0.0;
  double bb = 0.0;
  double ab = 0.0;

  double worst() const;
};

struct TrajectoryRow {
  double t = 0.0;
  ConstraintResiduals residuals;
  double d_norm = 0.0;  // Frobenius norm of the weighted D
};

struct EvolveResult {
  PropagatorState state;
  std::vector<TrajectoryRow> trajectory;
  ConstraintResiduals residuals;
  bool constraints_ok = true;
};

/// Time interval that contains the whole pump transit through the poled
/// region plus `pump_margin` / sigma_p on either side. For the apodized
/// profile the effective nonlinear region is a Gaussian of width
/// sigma * L centred on z = 0 and is cut at `crystal_margin` widths.
TimeWindow interaction_window(const WaveguideModel& wg, const PumpSpec& pump,
                              double pump_margin = 6.0, double crystal_margin = 5.0);

IntegrationConfig default_integration(const WaveguideModel& wg, const PumpSpec& pump);

PropagatorState init_state(const FrequencyGrid& grid, double t0);

/// Time derivatives from a continuum kernel snapshot; the grid supplies the
/// quadrature weights that turn it into the weighted convention.
StateDerivative rhs(const PropagatorState& state, const KernelSnapshot& kernels,
                    const FrequencyGrid& grid);

ConstraintResiduals constraint_residuals(const PropagatorState& state);

/// Supplies weighted couplings K(t) = G~1(t)^T / hbar (N_s x N_i) for a batch
/// of times. The partner coupling G~2^T / hbar is taken as K^T.
using CouplingSource = std::function<void(std::span<const double>, std::vector<CMatrix>&)>;

EvolveResult evolve(const CouplingSource& couplings, PropagatorState initial,
                    const IntegrationConfig& cfg);

EvolveResult evolve(const KernelFactory& factory, const IntegrationConfig& cfg);

}  // namespace hgpdc
