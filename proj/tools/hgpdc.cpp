// hgpdc: command-line front end for single runs, sweeps and the low-gain check.
//
// Exit codes: 0 ok, 2 config error, 3 numerical or constraint failure,
// 4 sweep finished with some failed powers.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hgpdc/config.hpp"
#include "hgpdc/errors.hpp"
#include "hgpdc/export.hpp"
#include "hgpdc/lowgain.hpp"
#include "hgpdc/runner.hpp"

namespace fs = std::filesystem;
using namespace hgpdc;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumerical = 3;
constexpr int kPartial = 4;

void print_row(const SweepRow& r) {
  std::printf("power %.6g W  gain %.6g  gain_db %.6g  purity %.6g\n", r.power_w, r.gain,
              r.gain_db, r.purity);
  std::printf("  p1..p3 %.6g %.6g %.6g   r1..r3 %.6g %.6g %.6g\n", r.p[0], r.p[1], r.p[2], r.r[0],
              r.r[1], r.r[2]);
  std::printf("  residuals aa %.3g  bb %.3g  ab %.3g   wall %.2f s\n", r.residuals.aa,
              r.residuals.bb, r.residuals.ab, r.wall_s);
}

int cmd_simulate(const std::string& path, double power, const fs::path& out, bool trajectory) {
  ExperimentConfig cfg = load_config(path);
  if (trajectory && cfg.integration.record_interval == 0) cfg.integration.record_interval = 16;
  const RunRecord rec = run_single(cfg, power);
  const SweepRow row = summarize(rec);
  write_sweep_csv(out / "run.csv", {row});
  write_metadata(out / "metadata.json", cfg, {power});
  write_run_artifacts(out, rec, 3);
  if (trajectory) write_trajectory_csv(out / "trajectory.csv", rec.evolution.trajectory);
  print_row(row);
  if (!rec.metrics) std::printf("  purity undefined: no squeezing at this power\n");
  return kOk;
}

int cmd_sweep(const std::string& path, const fs::path& out, int threads) {
  ExperimentConfig cfg = load_config(path);
  if (threads > 0) cfg.sweep.threads = threads;
  const auto powers = cfg.sweep.resolve();
  write_metadata(out / "metadata.json", cfg, powers);

  SweepCsvAppender partial(out / "sweep.partial.csv");
  const SweepResult res = run_sweep(
      cfg,
      [&](const SweepRow& row, const RunRecord& rec) {
        partial.append(row);
        if (cfg.dump_matrices) write_run_artifacts(out / "matrices", rec, 3);
      },
      &std::cerr);
  write_sweep_csv(out / "sweep.csv", res.rows);
  fs::remove(out / "sweep.partial.csv");

  if (!res.failures.empty()) {
    std::ofstream f(out / "failures.txt");
    for (const auto& e : res.failures) f << e.power_w << '\t' << e.message << '\n';
    std::fprintf(stderr, "%zu of %zu powers failed (see failures.txt)\n", res.failures.size(),
                 powers.size());
    return res.rows.empty() ? kNumerical : kPartial;
  }
  std::printf("%zu powers written to %s\n", res.rows.size(), (out / "sweep.csv").c_str());
  return kOk;
}

int cmd_validate_lowgain(const std::string& path, std::optional<double> power, const fs::path& out) {
  const ExperimentConfig cfg = load_config(path);
  const double p = power.value_or(cfg.power);
  const RunRecord rec = run_single(cfg, p);
  const AnalyticJsa oracle = analytic_jsa(rec.waveguide, rec.pump, rec.grid);
  const LowgainReport rep = compare_lowgain(rec.moment, oracle);
  write_lowgain_csv(out / "lowgain.csv", cfg.label, rep);
  write_metadata(out / "metadata.json", cfg, {p});
  write_matrix(out / ("oracle_" + power_tag(p) + ".cmat"), oracle.matrix, rec.grid.signal.nodes(),
               rec.grid.idler.nodes());
  write_run_artifacts(out, rec, 3);

  const bool ok = rep.shape_error <= 0.01 && std::abs(rep.scale_error) <= 0.02;
  std::printf("%s at %.6g W (%.4g dB)\n", cfg.label.c_str(), p, rep.sim_gain_db);
  std::printf("  shape error %.3e  scale error %+.3e  purity sim %.4f oracle %.4f  %s\n",
              rep.shape_error, rep.scale_error, rep.sim_purity, rep.oracle_purity,
              ok ? "OK" : "MISMATCH");
  return ok ? kOk : kNumerical;
}

int cmd_presets_list() {
  std::printf("%-26s %7s %-9s %-10s %8s %8s %11s %11s %11s\n", "name", "theta", "pm", "pump",
              "L_mm", "ng_s", "low_W", "high_W", "sweep_max_W");
  for (const auto& p : presets()) {
    const double theta = 0.0 + theta_angle(kCodata.c / 2.168, kCodata.c / p.signal_group_index,
                                     kCodata.c / 1.909);
    std::printf("%-26s %7.2f %-9s %-10s %8.3f %8.4f %11.4g %11.4g %11.4g\n", p.name.c_str(), theta,
                to_string(p.kind), to_string(p.bandwidth), p.length * 1e3, p.signal_group_index,
                p.low_power, p.high_power, p.sweep_max_power);
  }
  return kOk;
}

int cmd_export_modes(const std::string& path, double power, const fs::path& out, int modes) {
  const ExperimentConfig cfg = load_config(path);
  const RunRecord rec = run_single(cfg, power);
  if (!rec.metrics) throw EmptySpectrum("no Schmidt modes at " + std::to_string(power) + " W");
  write_modes_csv(out / "modes.csv", rec.decomposition, rec.grid, modes);
  write_run_artifacts(out, rec, modes);
  write_metadata(out / "metadata.json", cfg, {power});
  print_row(summarize(rec));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-gain PDC simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(HGPDC_VERSION));

  std::string config;
  double power = 0.0;
  std::optional<double> opt_power;
  fs::path out = "out";
  int threads = 0;
  int modes = 5;
  bool trajectory = false;

  auto* sim = app.add_subcommand("simulate", "Run one power and write metrics and matrices");
  sim->add_option("config", config, "YAML config")->required()->check(CLI::ExistingFile);
  sim->add_option("--power", power, "Pump peak power (W)")->required()->check(CLI::NonNegativeNumber);
  sim->add_option("--out", out, "Output directory");
  sim->add_flag("--trajectory", trajectory, "Record constraint residuals along the run");

  auto* sweep = app.add_subcommand("sweep", "Run the configured power sweep");
  sweep->add_option("config", config, "YAML config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--threads", threads, "Concurrent runs (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* low = app.add_subcommand("validate-lowgain", "Compare a low-power run against the perturbative JSA");
  low->add_option("config", config, "YAML config")->required()->check(CLI::ExistingFile);
  low->add_option("--power", opt_power, "Pump peak power (W); defaults to pump.power")
      ->check(CLI::NonNegativeNumber);
  low->add_option("--out", out, "Output directory");

  auto* pre = app.add_subcommand("presets", "Preset catalogue");
  pre->require_subcommand(1);
  pre->add_subcommand("list", "List the built-in presets");

  auto* exm = app.add_subcommand("export-modes", "Write Schmidt mode profiles for one power");
  exm->add_option("config", config, "YAML config")->required()->check(CLI::ExistingFile);
  exm->add_option("--power", power, "Pump peak power (W)")->required()->check(CLI::NonNegativeNumber);
  exm->add_option("--out", out, "Output directory");
  exm->add_option("--modes", modes, "Number of leading modes")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sim) return cmd_simulate(config, power, out, trajectory);
    if (*sweep) return cmd_sweep(config, out, threads);
    if (*low) return cmd_validate_lowgain(config, opt_power, out);
    if (*pre) return cmd_presets_list();
    if (*exm) return cmd_export_modes(config, power, out, modes);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kOk;
}
