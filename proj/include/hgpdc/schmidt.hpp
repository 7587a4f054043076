#pragma once

// Second moment <a_s b_i>, its Schmidt decomposition and the derived spectral
// metrics (purity, overall gain, modal weights).

#include "hgpdc/grid.hpp"
#include "hgpdc/propagator.hpp"
#include "hgpdc/types.hpp"

namespace hgpdc {

struct SecondMoment {
  CMatrix matrix;          // N_s x N_i, weighted convention
  RVector signal_weights;  // quadrature weights used to unweight modes
  RVector idler_weights;
  double source_power = 0.0;  // W
  double time = 0.0;          // s

  /// Moment with unit weights, for matrices that are already dimensionless.
  static SecondMoment unit_weights(CMatrix matrix);

  /// The moment as a continuum function on the grid, matrix / sqrt(w_s w_i).
  CMatrix continuum() const;
};

/// matrix = A D^T.
SecondMoment second_moment(const PropagatorState& state, const FrequencyGrid& grid,
                           double source_power = 0.0);

struct SchmidtDecomposition {
  RVector r;              // squeezing parameters, descending
  RVector sigma;          // singular values sinh(2 r) / 2
  CMatrix signal_modes;   // N_s x rank, continuum normalized
  CMatrix idler_modes;    // N_i x rank
  RVector signal_weights;
  RVector idler_weights;
  Eigen::Index rank = 0;
};

SchmidtDecomposition schmidt_decompose(const SecondMoment& moment, double truncation = 1e-8);

/// sum_l r_l psi_s psi_i^T on the grid (continuum values).
CMatrix reconstruct_jsa(const SchmidtDecomposition& dec);

/// sum_l sigma_l psi_s psi_i^T in the weighted convention; inverts schmidt_decompose.
CMatrix reconstruct_moment(const SchmidtDecomposition& dec);

struct SpectralMetrics {
  double purity = 0.0;
  double gain = 0.0;     // sqrt(sum r^2)
  double gain_db = 0.0;  // 20 G log10(e)
  RVector mode_weights;  // sinh^2 r_l / sum sinh^2 r
  double effective_modes = 0.0;
};

SpectralMetrics metrics(const SchmidtDecomposition& dec);
SpectralMetrics metrics_from_r(const RVector& r);

double gain_to_db(double gain);

}  // namespace hgpdc
