#include "hgpdc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hgpdc/errors.hpp"

namespace hgpdc {

const char* to_string(PumpBandwidth b) {
  return b == PumpBandwidth::broadband ? "broadband" : "narrowband";
}

double relative_pump_bandwidth(PumpBandwidth b) {
  return b == PumpBandwidth::broadband ? 0.003 : 0.0015;
}

namespace {

constexpr double kPumpGroupIndex = 2.168;
constexpr double kIdlerGroupIndex = 1.909;

PumpBandwidth bandwidth_from_string(const std::string& s) {
  if (s == "broadband") return PumpBandwidth::broadband;
  if (s == "narrowband") return PumpBandwidth::narrowband;
  throw ConfigError("unknown pump bandwidth '" + s + "' (expected broadband or narrowband)");
}

std::vector<PresetInfo> build_presets() {
  struct Row {
    int theta;
    double length;
    double ng_s;
    double low, high;
  };
  // Table I waveguides. Lengths equalize the phasematching bandwidth.
  const Row table[] = {
      {0, 2.5e-3, 2.168, 68.54e-6, 1.37e3},
      {45, 1.66e-3, 2.426, 27.78e-6, 0.56e3},
      {-11, 2.5e-3, 2.118, 68.54e-6, 1.37e3},
  };
  // Sweep tops reach the highest gains quoted for each broadband case
  // (about 65, 85, 99 and 92 dB for theta 0, 45, -11 and the apodized theta 0).
  // Past these the residuals are limited by roundoff growing like exp(2 r).
  auto sweep_top = [](int theta, PhasematchingKind kind, PumpBandwidth bw) {
    const bool sinc = kind == PhasematchingKind::sinc_qpm;
    if (bw == PumpBandwidth::narrowband) return theta == 45 ? 0.56e3 : 1.37e3;
    switch (theta) {
      case 0: return sinc ? 1.37e3 : 2.4e3;
      case 45: return sinc ? 1.6e3 : 1.75e3;
      default: return sinc ? 2.8e3 : 1.37e3;
    }
  };

  std::vector<PresetInfo> out;
  for (const Row& row : table) {
    for (auto kind : {PhasematchingKind::sinc_qpm, PhasematchingKind::gaussian_apodized}) {
      for (auto bw : {PumpBandwidth::broadband, PumpBandwidth::narrowband}) {
        PresetInfo p;
        p.name = "theta" + std::to_string(row.theta) + "-" +
                 (kind == PhasematchingKind::sinc_qpm ? "sinc" : "gauss") + "-" + to_string(bw);
        p.theta_deg = row.theta;
        p.kind = kind;
        p.bandwidth = bw;
        p.length = row.length;
        p.signal_group_index = row.ng_s;
        p.low_power = row.low;
        p.high_power = row.high;
        p.sweep_max_power = sweep_top(row.theta, kind, bw);
        out.push_back(p);
      }
    }
  }
  // Nearby angles: pump and idler velocities as in Table I, signal velocity
  // solved from theta, length of the 45 degree waveguide.
  for (int theta : {40, 42, 47, 50}) {
    PresetInfo p;
    p.name = "theta" + std::to_string(theta) + "-sinc-broadband";
    p.theta_deg = theta;
    p.kind = PhasematchingKind::sinc_qpm;
    p.bandwidth = PumpBandwidth::broadband;
    p.length = 1.66e-3;
    const double vs = signal_velocity_for_angle(theta, kCodata.c / kPumpGroupIndex,
                                                kCodata.c / kIdlerGroupIndex);
    p.signal_group_index = kCodata.c / vs;
    p.low_power = 27.78e-6;
    p.high_power = 0.56e3;
    p.sweep_max_power = 0.56e3;
    p.angle_derived = true;
    out.push_back(p);
  }
  return out;
}

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> table = build_presets();
  return table;
}

const PresetInfo& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + name + "' (see `hgpdc presets list`)");
}

std::vector<double> SweepSpec::resolve() const {
  if (!powers.empty()) {
    std::vector<double> out = powers;
    std::sort(out.begin(), out.end());
    return out;
  }
  if (count < 1) throw ConfigError("sweep.count must be at least 1");
  if (!(min_power > 0.0) || !(max_power >= min_power))
    throw ConfigError("sweep range needs 0 < min_power <= max_power");
  if (count == 1) return {min_power};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(min_power);
  const double b = std::log(max_power);
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (count - 1));
  out.front() = min_power;
  out.back() = max_power;
  return out;
}

WaveguideModel ExperimentConfig::make_waveguide() const {
  WaveguideParams p = waveguide;
  if (theta_deg) {
    const double vs = signal_velocity_for_angle(*theta_deg, p.constants.c / p.pump_group_index,
                                                p.constants.c / p.idler_group_index);
    p.signal_group_index = p.constants.c / vs;
  }
  return hgpdc::make_waveguide(p);
}

PumpSpec ExperimentConfig::make_pump(double p) const {
  PumpSpec pump;
  pump.omega0 = waveguide.omega_pump;
  pump.sigma = pump_sigma_rel * waveguide.omega_pump;
  pump.peak_power = p;
  pump.validate();
  return pump;
}

TimeWindow ExperimentConfig::window(const WaveguideModel& wg, const PumpSpec& pump) const {
  return interaction_window(wg, pump, integration.pump_margin, integration.crystal_margin);
}

int alias_free_pump_nodes(const PumpSpec& pump, const GridSpans& spans, const TimeWindow& window,
                          double safety) {
  const double span = 2.0 * spans.pump_sigmas * pump.sigma;
  const double needed = safety * (window.t1 - window.t0) * span / (2.0 * std::numbers::pi);
  int n = static_cast<int>(std::ceil(needed)) + 1;
  n = std::max(n, 128);
  return (n + 15) / 16 * 16;
}

FrequencyGrid ExperimentConfig::make_grid(const WaveguideModel& wg, const PumpSpec& pump) const {
  GridSizes sizes = grid;
  if (sizes.pump == 0) sizes.pump = alias_free_pump_nodes(pump, spans, window(wg, pump), alias_safety);
  return build_grid(wg, pump, sizes, spans);
}

IntegrationConfig ExperimentConfig::make_integration(const WaveguideModel& wg,
                                                     const PumpSpec& pump) const {
  const TimeWindow w = window(wg, pump);
  IntegrationConfig cfg;
  cfg.t0 = w.t0;
  cfg.t1 = w.t1;
  cfg.steps = integration.steps;
  cfg.constraint_tolerance = integration.constraint_tolerance;
  cfg.record_interval = integration.record_interval;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (label.empty()) throw ConfigError("label must not be empty");
  if (!(pump_sigma_rel > 0.0 && pump_sigma_rel < 0.5))
    throw ConfigError("pump.sigma_rel must lie in (0, 0.5)");
  if (!(power >= 0.0)) throw ConfigError("pump.power must be non-negative");
  for (int n : {grid.signal, grid.idler}) {
    if (n < 8 || n > 1024) throw ConfigError("signal/idler grid sizes must lie in [8, 1024]");
  }
  if (grid.pump != 0 && (grid.pump < 8 || grid.pump > 8192))
    throw ConfigError("pump grid size must be 0 (auto) or lie in [8, 8192]");
  if (!(alias_safety >= 1.0)) throw ConfigError("grid.alias_safety must be at least 1");
  if (integration.steps < 16) throw ConfigError("integration.steps must be at least 16");
  if (!(integration.pump_margin > 0.0) || !(integration.crystal_margin > 0.0))
    throw ConfigError("integration margins must be positive");
  if (!(integration.constraint_tolerance > 0.0))
    throw ConfigError("integration.constraint_tolerance must be positive");
  if (integration.record_interval < 0) throw ConfigError("integration.record_interval must be >= 0");
  if (!(truncation > 0.0 && truncation < 1.0)) throw ConfigError("analysis.truncation must lie in (0, 1)");
  for (double p : sweep.powers) {
    if (!(p >= 0.0)) throw ConfigError("sweep powers must be non-negative");
  }
  if (sweep.threads < 0) throw ConfigError("sweep.threads must be >= 0");
  // Surfaces physics-level violations (energy conservation, duty cycle, ...) as config errors.
  const WaveguideModel wg = make_waveguide();
  (void)make_pump(power);
  (void)wg;
}

ExperimentConfig preset_config(const std::string& name) {
  const PresetInfo& p = find_preset(name);
  ExperimentConfig cfg;
  cfg.label = p.name;
  cfg.preset = p.name;
  cfg.waveguide.pump_group_index = kPumpGroupIndex;
  cfg.waveguide.idler_group_index = kIdlerGroupIndex;
  cfg.waveguide.signal_group_index = p.signal_group_index;
  cfg.waveguide.length = p.length;
  cfg.waveguide.kind = p.kind;
  cfg.waveguide.overlap = kPresetOverlap;
  if (p.angle_derived) cfg.theta_deg = p.theta_deg;
  cfg.bandwidth = p.bandwidth;
  cfg.pump_sigma_rel = relative_pump_bandwidth(p.bandwidth);
  cfg.power = p.low_power;
  // High-gain spectra broaden well beyond the low-gain JSA; a span factor of 6
  // truncates them (purity at theta = -11 moves from 0.45 to 0.67 between 6 and 10).
  cfg.grid = GridSizes{128, 128, 0};
  cfg.spans.span_factor = 10.0;
  cfg.sweep.min_power = p.low_power;
  cfg.sweep.max_power = p.sweep_max_power;
  return cfg;
}

// ---------------------------------------------------------------------------
// YAML loading

namespace {

std::string where(const YAML::Node& node, const std::string& origin) {
  const YAML::Mark m = node.Mark();
  if (m.line < 0) return origin;
  return origin + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
}

class Reader {
public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  void require_map(const YAML::Node& node, const std::string& key) const {
    if (!node.IsMap()) throw ConfigError(where(node, origin_) + ": '" + key + "' must be a mapping");
  }

  void check_keys(const YAML::Node& node, const std::string& section,
                  const std::set<std::string>& allowed) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ConfigError(where(kv.first, origin_) + ": unknown key '" + key + "' in " + section +
                          " (allowed: " + list + ")");
      }
    }
  }

  template <class T>
  void get(const YAML::Node& node, const char* key, T& out) const {
    const YAML::Node v = node[key];
    if (!v) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(where(v, origin_) + ": bad value for '" + key + "'");
    }
  }

  const std::string& origin() const { return origin_; }

private:
  std::string origin_;
};

void apply(const YAML::Node& root, ExperimentConfig& cfg, const Reader& rd) {
  rd.check_keys(root, "top level",
                {"label", "preset", "waveguide", "pump", "grid", "integration", "sweep", "analysis"});
  rd.get(root, "label", cfg.label);

  if (const auto wg = root["waveguide"]) {
    rd.require_map(wg, "waveguide");
    rd.check_keys(wg, "waveguide",
                  {"theta_deg", "group_index_pump", "group_index_signal", "group_index_idler",
                   "length", "omega_pump", "omega_signal", "overlap", "phasematching", "duty_cycle",
                   "gaussian_width_factor"});
    auto& w = cfg.waveguide;
    rd.get(wg, "group_index_pump", w.pump_group_index);
    rd.get(wg, "group_index_idler", w.idler_group_index);
    if (wg["group_index_signal"]) {
      rd.get(wg, "group_index_signal", w.signal_group_index);
      cfg.theta_deg.reset();
    }
    if (wg["theta_deg"]) {
      double t = 0.0;
      rd.get(wg, "theta_deg", t);
      if (wg["group_index_signal"])
        throw ConfigError(where(wg, rd.origin()) + ": give either theta_deg or group_index_signal");
      if (!(std::abs(t) < 90.0)) throw ConfigError(where(wg["theta_deg"], rd.origin()) + ": theta_deg must lie in (-90, 90)");
      cfg.theta_deg = t;
    }
    rd.get(wg, "length", w.length);
    rd.get(wg, "omega_pump", w.omega_pump);
    rd.get(wg, "omega_signal", w.omega_signal);
    rd.get(wg, "overlap", w.overlap);
    rd.get(wg, "duty_cycle", w.duty_cycle);
    rd.get(wg, "gaussian_width_factor", w.gaussian_width_factor);
    if (const auto pm = wg["phasematching"]) {
      try {
        w.kind = phasematching_kind_from_string(pm.as<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(where(pm, rd.origin()) + ": " + e.what());
      }
    }
  }

  if (const auto pump = root["pump"]) {
    rd.require_map(pump, "pump");
    rd.check_keys(pump, "pump", {"bandwidth", "sigma_rel", "power"});
    if (const auto bw = pump["bandwidth"]) {
      try {
        cfg.bandwidth = bandwidth_from_string(bw.as<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(where(bw, rd.origin()) + ": " + e.what());
      }
      cfg.pump_sigma_rel = relative_pump_bandwidth(cfg.bandwidth);
    }
    rd.get(pump, "sigma_rel", cfg.pump_sigma_rel);
    rd.get(pump, "power", cfg.power);
  }

  if (const auto g = root["grid"]) {
    rd.require_map(g, "grid");
    rd.check_keys(g, "grid", {"signal", "idler", "pump", "span_factor", "pump_sigmas", "alias_safety"});
    rd.get(g, "signal", cfg.grid.signal);
    rd.get(g, "idler", cfg.grid.idler);
    rd.get(g, "pump", cfg.grid.pump);
    rd.get(g, "span_factor", cfg.spans.span_factor);
    rd.get(g, "pump_sigmas", cfg.spans.pump_sigmas);
    rd.get(g, "alias_safety", cfg.alias_safety);
  }

  if (const auto in = root["integration"]) {
    rd.require_map(in, "integration");
    rd.check_keys(in, "integration",
                  {"steps", "pump_margin", "crystal_margin", "constraint_tolerance", "record_interval"});
    rd.get(in, "steps", cfg.integration.steps);
    rd.get(in, "pump_margin", cfg.integration.pump_margin);
    rd.get(in, "crystal_margin", cfg.integration.crystal_margin);
    rd.get(in, "constraint_tolerance", cfg.integration.constraint_tolerance);
    rd.get(in, "record_interval", cfg.integration.record_interval);
  }

  if (const auto sw = root["sweep"]) {
    rd.require_map(sw, "sweep");
    rd.check_keys(sw, "sweep", {"powers", "min_power", "max_power", "count", "threads"});
    rd.get(sw, "powers", cfg.sweep.powers);
    rd.get(sw, "min_power", cfg.sweep.min_power);
    rd.get(sw, "max_power", cfg.sweep.max_power);
    rd.get(sw, "count", cfg.sweep.count);
    rd.get(sw, "threads", cfg.sweep.threads);
  }

  if (const auto an = root["analysis"]) {
    rd.require_map(an, "analysis");
    rd.check_keys(an, "analysis", {"truncation", "dump_matrices"});
    rd.get(an, "truncation", cfg.truncation);
    rd.get(an, "dump_matrices", cfg.dump_matrices);
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ": YAML parse error: " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(origin + ": config must be a YAML mapping");
  const Reader rd(origin);

  ExperimentConfig cfg;
  if (const auto p = root["preset"]) {
    std::string name;
    rd.get(root, "preset", name);
    try {
      cfg = preset_config(name);
    } catch (const ConfigError& e) {
      throw ConfigError(where(p, origin) + ": " + e.what());
    }
  }
  apply(root, cfg, rd);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace hgpdc
