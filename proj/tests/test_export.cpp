#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "hgpdc/errors.hpp"
#include "hgpdc/export.hpp"

using namespace hgpdc;
namespace fs = std::filesystem;
using doctest::Approx;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

SweepRow sample_row(double power) {
  SweepRow r;
  r.power_w = power;
  r.gain = 1.0 / 3.0;
  r.gain_db = gain_to_db(r.gain);
  r.purity = 0.1 + 1e-17;
  r.p[0] = 0.7;
  r.p[1] = 0.2;
  r.p[2] = 0.1;
  r.r[0] = std::sqrt(2.0);
  r.r[1] = 1e-300;
  r.r[2] = 0.0;
  r.residuals = {1.5e-12, 2.25e-13, 7e-15};
  r.wall_s = 12.5;
  return r;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void check_same(const SweepRow& a, const SweepRow& b) {
  CHECK(same(a.power_w, b.power_w));
  CHECK(same(a.gain, b.gain));
  CHECK(same(a.gain_db, b.gain_db));
  CHECK(same(a.purity, b.purity));
  for (int k = 0; k < 3; ++k) {
    CHECK(same(a.p[k], b.p[k]));
    CHECK(same(a.r[k], b.r[k]));
  }
  CHECK(same(a.residuals.aa, b.residuals.aa));
  CHECK(same(a.residuals.bb, b.residuals.bb));
  CHECK(same(a.residuals.ab, b.residuals.ab));
  CHECK(same(a.wall_s, b.wall_s));
}

}  // namespace

TEST_SUITE("export") {

TEST_CASE("sweep header is fixed") {
  CHECK(std::string(kSweepHeader) ==
        "power_w,gain,gain_db,purity,p1,p2,p3,r1,r2,r3,res_aa,res_bb,res_ab,wall_s");
}

TEST_CASE("sweep rows round-trip bit-exactly") {
  const SweepRow a = sample_row(1370.0);
  check_same(a, parse_row(format_row(a)));
  SweepRow undefined = sample_row(0.0);
  undefined.purity = std::numeric_limits<double>::quiet_NaN();
  check_same(undefined, parse_row(format_row(undefined)));
  CHECK_THROWS_AS(parse_row("1,2,3"), Error);
  CHECK_THROWS_AS(parse_row("1,2,3,4,5,6,7,8,9,10,11,12,13,x"), Error);
}

TEST_CASE("sweep csv files") {
  TempDir tmp("hgpdc_export_csv");
  const std::vector<SweepRow> rows = {sample_row(1e-4), sample_row(1.0), sample_row(1e3)};
  write_sweep_csv(tmp.path / "sub" / "sweep.csv", rows);
  const auto back = read_sweep_csv(tmp.path / "sub" / "sweep.csv");
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) check_same(rows[k], back[k]);

  std::ofstream(tmp.path / "bad.csv") << "power,gain\n1,2\n";
  CHECK_THROWS_AS(read_sweep_csv(tmp.path / "bad.csv"), Error);
  CHECK_THROWS_AS(read_sweep_csv(tmp.path / "missing.csv"), Error);
}

TEST_CASE("appender leaves a readable file after every row") {
  TempDir tmp("hgpdc_export_append");
  SweepCsvAppender app(tmp.path / "partial.csv");
  CHECK(read_sweep_csv(tmp.path / "partial.csv").empty());
  app.append(sample_row(1.0));
  CHECK(read_sweep_csv(tmp.path / "partial.csv").size() == 1);
  app.append(sample_row(2.0));
  const auto rows = read_sweep_csv(tmp.path / "partial.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].power_w == 2.0);
}

TEST_CASE("complex matrix dumps round-trip bit-exactly") {
  TempDir tmp("hgpdc_export_cmat");
  CMatrix m(3, 2);
  m << cdouble(1, -2), cdouble(1e-300, 3e300), cdouble(-0.0, 0.1), cdouble(M_PI, M_E),
      cdouble(1.0 / 3.0, -1.0 / 7.0), cdouble(5, 6);
  RVector rows(3), cols(2);
  rows << 1.1e15, 1.2e15, 1.3e15;
  cols << -1.0, 2.5;
  write_matrix(tmp.path / "m.cmat", m, rows, cols);
  const MatrixDump d = read_matrix(tmp.path / "m.cmat");
  CHECK(d.matrix == m);
  CHECK(d.row_axis == rows);
  CHECK(d.col_axis == cols);
  CHECK(fs::file_size(tmp.path / "m.cmat") == 8 + 4 + 4 + 8 + 8 + 8 * 5 + 16 * 6);

  CHECK_THROWS_AS(write_matrix(tmp.path / "x.cmat", m, cols, rows), DimensionMismatch);
  std::ofstream(tmp.path / "junk.cmat") << "not a matrix";
  CHECK_THROWS_AS(read_matrix(tmp.path / "junk.cmat"), Error);
  {
    std::ifstream in(tmp.path / "m.cmat", std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    std::ofstream(tmp.path / "cut.cmat", std::ios::binary) << bytes.substr(0, bytes.size() - 5);
  }
  CHECK_THROWS_AS(read_matrix(tmp.path / "cut.cmat"), Error);
}

TEST_CASE("metadata records theta, geometry and grid checksums") {
  TempDir tmp("hgpdc_export_meta");
  ExperimentConfig cfg = preset_config("theta45-sinc-broadband");
  cfg.grid = {32, 32, 0};
  write_metadata(tmp.path / "metadata.json", cfg, {1.0, 2.0});
  std::ifstream in(tmp.path / "metadata.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["theta_deg"].get<double>() == Approx(44.9).epsilon(0.001));
  CHECK(j["version"].get<std::string>() == HGPDC_VERSION);
  CHECK(j["powers_w"].size() == 2);
  CHECK(j["poling_period_m"].get<double>() > 0.0);
  CHECK(j["grid"]["signal"]["size"].get<int>() == 32);
  CHECK(j["grid"]["pump"]["checksum"].get<std::string>().size() == 16);
  CHECK(j["config"]["preset"] == "theta45-sinc-broadband");
  CHECK(j["time_window_s"][0].get<double>() < j["time_window_s"][1].get<double>());
}

TEST_CASE("config fingerprint tracks every field") {
  ExperimentConfig a = preset_config("theta0-sinc-broadband");
  ExperimentConfig b = a;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.integration.steps = 4096;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  b = a;
  b.waveguide.overlap *= 1.0 + 1e-12;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  CHECK(nlohmann::json::parse(config_json(a))["grid"]["signal"] == 128);
}

TEST_CASE("mode profiles csv") {
  TempDir tmp("hgpdc_export_modes");
  FrequencyGrid g;
  g.signal = make_uniform_axis(1e15, 1e12, 4);
  g.idler = make_uniform_axis(1.4e15, 1e12, 3);
  CMatrix m = CMatrix::Zero(4, 3);
  m(1, 1) = 0.4;
  m(2, 0) = 0.1;
  SecondMoment sm;
  sm.matrix = m;
  sm.signal_weights = g.signal.weights;
  sm.idler_weights = g.idler.weights;
  const SchmidtDecomposition d = schmidt_decompose(sm);
  write_modes_csv(tmp.path / "modes.csv", d, g, 5);
  std::ifstream in(tmp.path / "modes.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "axis,index,omega,mode,re,im,abs");
  int n = 0;
  while (std::getline(in, line)) ++n;
  CHECK(n == 2 * (4 + 3));
  CHECK(power_tag(1370.0) == "P1.370000e+03W");
}

}  // TEST_SUITE
