#pragma once

// Experiment configuration: named presets for the waveguides and pumps of the
// study plus a strict YAML loader that layers user overrides on a preset.

#include <optional>
#include <string>
#include <vector>

#include "hgpdc/grid.hpp"
#include "hgpdc/physics.hpp"
#include "hgpdc/propagator.hpp"

namespace hgpdc {

enum class PumpBandwidth { narrowband, broadband };

const char* to_string(PumpBandwidth b);

/// sigma_p / omega_p0 for the two pump presets (sigma_t = 274.10 fs and 137.05 fs).
double relative_pump_bandwidth(PumpBandwidth b);

/// Overlap factor M (1/V) used by every preset. Calibrated so that the
/// theta = 0 sinc broadband waveguide reaches 65.57 dB at 1.37 kW.
inline constexpr double kPresetOverlap = 3.366e-9;

struct PresetInfo {
  std::string name;
  double theta_deg = 0.0;      // nominal angle
  PhasematchingKind kind = PhasematchingKind::sinc_qpm;
  PumpBandwidth bandwidth = PumpBandwidth::broadband;
  double length = 0.0;         // m
  double signal_group_index = 0.0;
  double low_power = 0.0;      // W
  double high_power = 0.0;     // W
  double sweep_max_power = 0.0;  // top of the default sweep (W)
  bool angle_derived = false;  // signal velocity solved from theta
};

const std::vector<PresetInfo>& presets();
const PresetInfo& find_preset(const std::string& name);

struct SweepSpec {
  std::vector<double> powers;  // explicit list; overrides the log-spaced range
  double min_power = 0.0;
  double max_power = 0.0;
  int count = 24;
  int threads = 0;             // 0 selects hardware concurrency

  std::vector<double> resolve() const;
};

struct IntegrationSettings {
  int steps = 2048;
  double pump_margin = 6.0;
  double crystal_margin = 5.0;
  double constraint_tolerance = 1e-3;
  int record_interval = 0;
};

struct ExperimentConfig {
  std::string label = "run";
  std::string preset;
  WaveguideParams waveguide;
  std::optional<double> theta_deg;  // when set, the signal group index is solved from it
  PumpBandwidth bandwidth = PumpBandwidth::broadband;
  double pump_sigma_rel = 0.003;
  double power = 0.0;  // default power for single runs (W)
  GridSizes grid;      // grid.pump == 0 selects the alias-free size automatically
  GridSpans spans;
  double alias_safety = 1.2;
  IntegrationSettings integration;
  SweepSpec sweep;
  double truncation = 1e-8;
  bool dump_matrices = false;

  WaveguideModel make_waveguide() const;
  PumpSpec make_pump(double power) const;
  TimeWindow window(const WaveguideModel& wg, const PumpSpec& pump) const;
  /// Grid with the pump axis sized so the quadrature does not alias inside the window.
  FrequencyGrid make_grid(const WaveguideModel& wg, const PumpSpec& pump) const;
  IntegrationConfig make_integration(const WaveguideModel& wg, const PumpSpec& pump) const;

  void validate() const;
};

/// Fully populated config for a named preset.
ExperimentConfig preset_config(const std::string& name);

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin = "<string>");

/// Smallest pump grid size that keeps the alias period above `safety` times the window.
int alias_free_pump_nodes(const PumpSpec& pump, const GridSpans& spans, const TimeWindow& window,
                          double safety);

}  // namespace hgpdc
