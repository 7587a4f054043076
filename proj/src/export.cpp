#include "hgpdc/export.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include <json.hpp>

#include "hgpdc/errors.hpp"

namespace hgpdc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(const std::ofstream& out, const fs::path& path) {
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

json axis_json(const FrequencyAxis& axis) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(axis_checksum(axis)));
  return {{"size", axis.size()},
          {"center", axis.center},
          {"first", axis.node(0)},
          {"last", axis.node(axis.size() - 1)},
          {"checksum", hex}};
}

json config_to_json(const ExperimentConfig& cfg) {
  const auto& w = cfg.waveguide;
  json j;
  j["label"] = cfg.label;
  j["preset"] = cfg.preset;
  j["waveguide"] = {{"group_index_pump", w.pump_group_index},
                    {"group_index_signal", w.signal_group_index},
                    {"group_index_idler", w.idler_group_index},
                    {"length", w.length},
                    {"omega_pump", w.omega_pump},
                    {"omega_signal", w.omega_signal},
                    {"overlap", w.overlap},
                    {"phasematching", to_string(w.kind)},
                    {"duty_cycle", w.duty_cycle},
                    {"gaussian_width_factor", w.gaussian_width_factor}};
  if (cfg.theta_deg) j["waveguide"]["theta_deg"] = *cfg.theta_deg;
  j["pump"] = {{"bandwidth", to_string(cfg.bandwidth)},
               {"sigma_rel", cfg.pump_sigma_rel},
               {"power", cfg.power}};
  j["grid"] = {{"signal", cfg.grid.signal},
               {"idler", cfg.grid.idler},
               {"pump", cfg.grid.pump},
               {"span_factor", cfg.spans.span_factor},
               {"pump_sigmas", cfg.spans.pump_sigmas},
               {"alias_safety", cfg.alias_safety}};
  j["integration"] = {{"steps", cfg.integration.steps},
                      {"pump_margin", cfg.integration.pump_margin},
                      {"crystal_margin", cfg.integration.crystal_margin},
                      {"constraint_tolerance", cfg.integration.constraint_tolerance},
                      {"record_interval", cfg.integration.record_interval}};
  j["sweep"] = {{"powers", cfg.sweep.powers},
                {"min_power", cfg.sweep.min_power},
                {"max_power", cfg.sweep.max_power},
                {"count", cfg.sweep.count}};
  j["analysis"] = {{"truncation", cfg.truncation}, {"dump_matrices", cfg.dump_matrices}};
  return j;
}

}  // namespace

std::string format_row(const SweepRow& r) {
  std::string s = num(r.power_w);
  for (double v : {r.gain, r.gain_db, r.purity, r.p[0], r.p[1], r.p[2], r.r[0], r.r[1], r.r[2],
                   r.residuals.aa, r.residuals.bb, r.residuals.ab, r.wall_s}) {
    s += ',';
    s += num(v);
  }
  return s;
}

SweepRow parse_row(const std::string& line) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double x = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) throw Error("malformed sweep row: '" + line + "'");
    v.push_back(x);
  }
  if (v.size() != 14) throw Error("sweep row has " + std::to_string(v.size()) + " fields, expected 14");
  SweepRow r;
  r.power_w = v[0];
  r.gain = v[1];
  r.gain_db = v[2];
  r.purity = v[3];
  for (int k = 0; k < 3; ++k) {
    r.p[k] = v[4 + k];
    r.r[k] = v[7 + k];
  }
  r.residuals = {v[10], v[11], v[12]};
  r.wall_s = v[13];
  return r;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  auto out = open_out(path);
  out << kSweepHeader << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
  check_written(out, path);
}

std::vector<SweepRow> read_sweep_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader)
    throw Error("'" + path.string() + "' does not start with the sweep header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(parse_row(line));
  }
  return rows;
}

SweepCsvAppender::SweepCsvAppender(const fs::path& path)
    : path_(path), out_(open_out(path)) {
  out_ << kSweepHeader << '\n' << std::flush;
}

void SweepCsvAppender::append(const SweepRow& row) {
  out_ << format_row(row) << '\n' << std::flush;
  check_written(out_, path_);
}

std::string config_json(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(); }

std::uint64_t config_fingerprint(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config_json(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_metadata(const fs::path& path, const ExperimentConfig& cfg,
                    const std::vector<double>& powers) {
  const WaveguideModel wg = cfg.make_waveguide();
  const PumpSpec pump = cfg.make_pump(powers.empty() ? cfg.power : powers.front());
  const FrequencyGrid grid = cfg.make_grid(wg, pump);
  const IntegrationConfig ic = cfg.make_integration(wg, pump);

  json j;
  j["version"] = HGPDC_VERSION;
  j["config"] = config_to_json(cfg);
  j["powers_w"] = powers;
  j["theta_deg"] = theta_angle(wg);
  j["poling_period_m"] = wg.poling.poling_period;
  j["qpm_order"] = wg.poling.qpm_order;
  j["gaussian_width_factor"] = wg.poling.gaussian_width_factor;
  j["group_velocity"] = {{"pump", wg.pump.vg}, {"signal", wg.signal.vg}, {"idler", wg.idler.vg}};
  j["signal_velocity_from_theta"] = cfg.theta_deg.has_value();
  j["pump_sigma"] = pump.sigma;
  j["phasematching_bandwidth"] = phasematching_bandwidth(wg);
  j["time_window_s"] = {ic.t0, ic.t1};
  j["steps"] = ic.steps;
  j["pump_alias_period_s"] = pump_alias_period(grid);
  j["grid"] = {{"signal", axis_json(grid.signal)},
               {"idler", axis_json(grid.idler)},
               {"pump", axis_json(grid.pump)}};
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  check_written(out, path);
}

namespace {

constexpr char kMagic[8] = {'H', 'G', 'P', 'D', 'C', 'M', 'A', 'T'};

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T take(std::ifstream& in, const fs::path& path) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("truncated matrix file '" + path.string() + "'");
  return v;
}

}  // namespace

void write_matrix(const fs::path& path, const CMatrix& m, const RVector& row_axis,
                  const RVector& col_axis) {
  if (row_axis.size() != m.rows() || col_axis.size() != m.cols())
    throw DimensionMismatch("matrix axes do not match its shape");
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index k = 0; k < row_axis.size(); ++k) put(out, row_axis[k]);
  for (Eigen::Index k = 0; k < col_axis.size(); ++k) put(out, col_axis[k]);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      put(out, m(r, c).real());
      put(out, m(r, c).imag());
    }
  }
  check_written(out, path);
}

MatrixDump read_matrix(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw Error("'" + path.string() + "' is not a matrix dump");
  if (take<std::uint32_t>(in, path) != 1) throw Error("unsupported matrix dump version");
  take<std::uint32_t>(in, path);
  const auto rows = static_cast<Eigen::Index>(take<std::uint64_t>(in, path));
  const auto cols = static_cast<Eigen::Index>(take<std::uint64_t>(in, path));
  MatrixDump d;
  d.row_axis.resize(rows);
  d.col_axis.resize(cols);
  d.matrix.resize(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k) d.row_axis[k] = take<double>(in, path);
  for (Eigen::Index k = 0; k < cols; ++k) d.col_axis[k] = take<double>(in, path);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = take<double>(in, path);
      const double im = take<double>(in, path);
      d.matrix(r, c) = {re, im};
    }
  }
  return d;
}

void write_modes_csv(const fs::path& path, const SchmidtDecomposition& dec,
                     const FrequencyGrid& grid, int count) {
  auto out = open_out(path);
  out << "axis,index,omega,mode,re,im,abs\n";
  const auto n = std::min<Eigen::Index>(count, dec.rank);
  auto dump = [&](const char* name, const CMatrix& modes, const FrequencyAxis& axis) {
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index k = 0; k < axis.size(); ++k) {
        const cdouble v = modes(k, l);
        out << name << ',' << k << ',' << num(axis.node(k)) << ',' << l + 1 << ',' << num(v.real())
            << ',' << num(v.imag()) << ',' << num(std::abs(v)) << '\n';
      }
    }
  };
  dump("signal", dec.signal_modes, grid.signal);
  dump("idler", dec.idler_modes, grid.idler);
  check_written(out, path);
}

void write_trajectory_csv(const fs::path& path, const std::vector<TrajectoryRow>& rows) {
  auto out = open_out(path);
  out << "t,res_aa,res_bb,res_ab,d_norm\n";
  for (const auto& r : rows) {
    out << num(r.t) << ',' << num(r.residuals.aa) << ',' << num(r.residuals.bb) << ','
        << num(r.residuals.ab) << ',' << num(r.d_norm) << '\n';
  }
  check_written(out, path);
}

void write_lowgain_csv(const fs::path& path, const std::string& preset, const LowgainReport& rep) {
  auto out = open_out(path);
  out << "preset,shape_error,scale_error,oracle_purity,sim_purity,sim_gain_db\n";
  out << preset << ',' << num(rep.shape_error) << ',' << num(rep.scale_error) << ','
      << num(rep.oracle_purity) << ',' << num(rep.sim_purity) << ',' << num(rep.sim_gain_db) << '\n';
  check_written(out, path);
}

std::string power_tag(double power) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "P%.6eW", power);
  return buf;
}

void write_run_artifacts(const fs::path& dir, const RunRecord& rec, int modes) {
  const std::string tag = power_tag(rec.power);
  const RVector ws = rec.grid.signal.nodes();
  const RVector wi = rec.grid.idler.nodes();
  write_matrix(dir / ("moment_" + tag + ".cmat"), rec.moment.continuum(), ws, wi);
  if (rec.decomposition.rank > 0) {
    write_matrix(dir / ("jsa_" + tag + ".cmat"), reconstruct_jsa(rec.decomposition), ws, wi);
    write_modes_csv(dir / ("modes_" + tag + ".csv"), rec.decomposition, rec.grid, modes);
  }
}

}  // namespace hgpdc
