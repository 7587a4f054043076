#include "hgpdc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "hgpdc/errors.hpp"

namespace hgpdc {

FrequencyAxis make_uniform_axis(double center, double half_width, int n) {
  if (n < 2) throw ConfigError("frequency axis needs at least two nodes");
  if (!(half_width > 0.0)) throw InvalidSpan("frequency axis half width must be positive");
  FrequencyAxis axis;
  axis.center = center;
  axis.detuning = RVector::LinSpaced(n, -half_width, half_width);
  const double h = 2.0 * half_width / (n - 1);
  axis.weights = RVector::Constant(n, h);
  axis.weights[0] = 0.5 * h;
  axis.weights[n - 1] = 0.5 * h;
  return axis;
}

FrequencyGrid build_grid(const WaveguideModel& wg, const PumpSpec& pump, const GridSizes& sizes,
                         const GridSpans& spans) {
  for (int n : {sizes.signal, sizes.idler, sizes.pump}) {
    if (n < 8) throw ConfigError("grid sizes must be at least 8, got " + std::to_string(n));
  }
  if (!(spans.span_factor > 0.0) || !(spans.pump_sigmas > 0.0))
    throw InvalidSpan("span factors must be positive");

  const double pm_bandwidth = phasematching_bandwidth(wg);
  const double scale = std::isfinite(pm_bandwidth) ? std::max(pump.sigma, pm_bandwidth) : pump.sigma;
  const double half = 0.5 * spans.span_factor * scale;

  FrequencyGrid grid;
  grid.signal = make_uniform_axis(wg.signal.omega0, half, sizes.signal);
  grid.idler = make_uniform_axis(wg.idler.omega0, half, sizes.idler);
  grid.pump = make_uniform_axis(pump.omega0, spans.pump_sigmas * pump.sigma, sizes.pump);

  for (const auto* axis : {&grid.signal, &grid.idler, &grid.pump}) {
    if (!(axis->node(0) > 0.0))
      throw InvalidSpan("frequency window reaches non-positive frequencies");
  }
  return grid;
}

double pump_alias_period(const FrequencyGrid& grid) {
  return 2.0 * std::numbers::pi / grid.pump.spacing();
}

std::uint64_t axis_checksum(const FrequencyAxis& axis) {
  std::uint64_t h = 1469598103934665603ULL;
  const RVector nodes = axis.nodes();
  for (Eigen::Index k = 0; k < nodes.size(); ++k) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &nodes[k], sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace hgpdc
