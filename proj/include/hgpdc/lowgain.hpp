#pragma once

// First-order perturbative joint spectral amplitude, used as an independent
// oracle for the propagator at small pump power.

#include "hgpdc/grid.hpp"
#include "hgpdc/physics.hpp"
#include "hgpdc/schmidt.hpp"
#include "hgpdc/types.hpp"

namespace hgpdc {

struct AnalyticJsa {
  CMatrix matrix;       // N_s x N_i, continuum normalized
  cdouble zeta_center;  // zeta at the carrier pair, for the record
  RVector signal_weights;
  RVector idler_weights;

  /// matrix scaled by sqrt(w_s w_i), comparable to a simulated moment.
  CMatrix weighted() const;
};

/// J(w_s, w_i) = zeta alpha(w_s + w_i) phi(dk at w_p = w_s + w_i) with
/// zeta = -i gamma_p M / c sqrt(w_s w_i n_s n_i n_p).
AnalyticJsa analytic_jsa(const WaveguideModel& wg, const PumpSpec& pump, const FrequencyGrid& grid);

struct LowgainReport {
  double shape_error = 0.0;  // max |m/max|m| - j/max|j||
  double scale_error = 0.0;  // ||m||_F / ||j||_F - 1
  double oracle_purity = 0.0;
  double sim_purity = 0.0;
  double sim_gain_db = 0.0;
};

/// Throws RegimeError when the simulated moment is above 1 dB of gain.
LowgainReport compare_lowgain(const SecondMoment& sim, const AnalyticJsa& oracle);

/// Orientation in degrees of the major axis of |J|^2 in the (detuning_s,
/// detuning_i) plane, from the intensity-weighted second moments inside the
/// largest disk inscribed in the grid. Range (-90, 90].
double jsa_orientation_deg(const CMatrix& jsa, const FrequencyGrid& grid);

}  // namespace hgpdc
