#pragma once

// End-to-end pipeline: evolve -> second moment -> Schmidt decomposition ->
// metrics, for one power or a sweep of powers run concurrently.

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hgpdc/config.hpp"
#include "hgpdc/kernel.hpp"
#include "hgpdc/propagator.hpp"
#include "hgpdc/schmidt.hpp"

namespace hgpdc {

struct RunRecord {
  double power = 0.0;
  WaveguideModel waveguide;
  PumpSpec pump;
  FrequencyGrid grid;
  IntegrationConfig integration;
  EvolveResult evolution;
  SecondMoment moment;
  SchmidtDecomposition decomposition;
  std::optional<SpectralMetrics> metrics;  // empty when every r vanishes (zero power)
  double wall_s = 0.0;
};

/// Deterministic for a given config and power. Numerical failures are
/// rethrown with the preset label and power prepended.
RunRecord run_single(const ExperimentConfig& cfg, double power);

struct SweepRow {
  double power_w = 0.0;
  double gain = 0.0;
  double gain_db = 0.0;
  double purity = 0.0;  // NaN when undefined
  double p[3] = {0.0, 0.0, 0.0};
  double r[3] = {0.0, 0.0, 0.0};
  ConstraintResiduals residuals;
  double wall_s = 0.0;
};

SweepRow summarize(const RunRecord& rec);

struct SweepFailure {
  double power_w = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by power
  std::vector<SweepFailure> failures;
};

/// Called once per finished power, serialized under a lock, in completion order.
using RowCallback = std::function<void(const SweepRow&, const RunRecord&)>;

SweepResult run_sweep(const ExperimentConfig& cfg, const RowCallback& on_row = {},
                      std::ostream* log = nullptr);

}  // namespace hgpdc
