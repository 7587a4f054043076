#pragma once

#include <cstdint>

#include "hgpdc/physics.hpp"
#include "hgpdc/types.hpp"

namespace hgpdc {

/// One uniformly sampled frequency axis with trapezoidal weights.
struct FrequencyAxis {
  double center = 0.0;  // carrier the axis is centered on (rad/s)
  RVector detuning;     // nodes - center
  RVector weights;      // trapezoid weights (rad/s)

  Eigen::Index size() const { return detuning.size(); }
  RVector nodes() const { return detuning.array() + center; }
  double node(Eigen::Index k) const { return center + detuning[k]; }
  double spacing() const { return size() > 1 ? detuning[1] - detuning[0] : 0.0; }
  double span() const { return size() > 1 ? detuning[size() - 1] - detuning[0] : 0.0; }
};

/// Quadrature nodes and weights for the signal, idler and pump axes.
struct FrequencyGrid {
  FrequencyAxis signal;
  FrequencyAxis idler;
  FrequencyAxis pump;
};

struct GridSizes {
  int signal = 96;
  int idler = 96;
  int pump = 256;
};

struct GridSpans {
  /// Signal/idler full width in units of max(pump bandwidth, phasematching bandwidth).
  double span_factor = 6.0;
  /// Pump half width in units of sigma_p.
  double pump_sigmas = 5.0;
};

/// `n` uniform nodes on [center - half_width, center + half_width].
FrequencyAxis make_uniform_axis(double center, double half_width, int n);

FrequencyGrid build_grid(const WaveguideModel& wg, const PumpSpec& pump, const GridSizes& sizes,
                         const GridSpans& spans = {});

/// Period in time after which the trapezoidal pump quadrature aliases: 2 pi / d_omega_p.
double pump_alias_period(const FrequencyGrid& grid);

/// FNV-1a over the IEEE bytes of the axis nodes; used to fingerprint runs.
std::uint64_t axis_checksum(const FrequencyAxis& axis);

}  // namespace hgpdc
