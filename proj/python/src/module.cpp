// Python bindings: presets, config loading, single runs, sweeps and the
// low-gain oracle. Matrices come back as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hgpdc/config.hpp"
#include "hgpdc/errors.hpp"
#include "hgpdc/export.hpp"
#include "hgpdc/lowgain.hpp"
#include "hgpdc/runner.hpp"

namespace py = pybind11;
using namespace hgpdc;

namespace {

py::dict row_dict(const SweepRow& r) {
  py::dict d;
  d["power_w"] = r.power_w;
  d["gain"] = r.gain;
  d["gain_db"] = r.gain_db;
  d["purity"] = r.purity;
  d["p"] = std::vector<double>(r.p, r.p + 3);
  d["r"] = std::vector<double>(r.r, r.r + 3);
  d["residuals"] = py::dict(py::arg("aa") = r.residuals.aa, py::arg("bb") = r.residuals.bb,
                            py::arg("ab") = r.residuals.ab);
  d["wall_s"] = r.wall_s;
  return d;
}

py::dict run_dict(const RunRecord& rec) {
  py::dict d = row_dict(summarize(rec));
  d["r_all"] = RVector(rec.decomposition.r);
  d["moment"] = rec.moment.continuum();
  d["signal_omega"] = RVector(rec.grid.signal.nodes());
  d["idler_omega"] = RVector(rec.grid.idler.nodes());
  d["signal_modes"] = CMatrix(rec.decomposition.signal_modes);
  d["idler_modes"] = CMatrix(rec.decomposition.idler_modes);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "High-gain PDC simulator core";
  m.attr("__version__") = HGPDC_VERSION;
  m.attr("SWEEP_HEADER") = kSweepHeader;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<ExperimentConfig>(m, "Config")
      .def_readwrite("label", &ExperimentConfig::label)
      .def_readonly("preset", &ExperimentConfig::preset)
      .def_readwrite("power", &ExperimentConfig::power)
      .def_property(
          "grid", [](const ExperimentConfig& c) { return std::vector<int>{c.grid.signal, c.grid.idler, c.grid.pump}; },
          [](ExperimentConfig& c, const std::vector<int>& g) {
            if (g.size() != 3) throw ConfigError("grid needs [signal, idler, pump]");
            c.grid = {g[0], g[1], g[2]};
          })
      .def_property(
          "steps", [](const ExperimentConfig& c) { return c.integration.steps; },
          [](ExperimentConfig& c, int s) { c.integration.steps = s; })
      .def_property(
          "sweep_powers", [](const ExperimentConfig& c) { return c.sweep.resolve(); },
          [](ExperimentConfig& c, std::vector<double> p) { c.sweep.powers = std::move(p); })
      .def("validate", &ExperimentConfig::validate)
      .def("to_json", [](const ExperimentConfig& c) { return config_json(c); })
      .def("theta_deg", [](const ExperimentConfig& c) { return theta_angle(c.make_waveguide()); })
      .def("__repr__", [](const ExperimentConfig& c) { return "<Config " + c.label + ">"; });

  m.def("presets", [] {
    py::list out;
    for (const auto& p : presets()) {
      out.append(py::dict(py::arg("name") = p.name, py::arg("theta_deg") = p.theta_deg,
                          py::arg("phasematching") = to_string(p.kind),
                          py::arg("bandwidth") = to_string(p.bandwidth), py::arg("length") = p.length,
                          py::arg("low_power") = p.low_power, py::arg("high_power") = p.high_power,
                          py::arg("sweep_max_power") = p.sweep_max_power));
    }
    return out;
  });
  m.def("preset_config", &preset_config, py::arg("name"));
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"), py::arg("origin") = "<string>");

  m.def(
      "run",
      [](const ExperimentConfig& cfg, double power) {
        RunRecord rec;
        {
          py::gil_scoped_release release;
          rec = run_single(cfg, power);
        }
        return run_dict(rec);
      },
      py::arg("config"), py::arg("power"), "Simulate one pump power.");

  m.def(
      "sweep",
      [](const ExperimentConfig& cfg) {
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = run_sweep(cfg);
        }
        py::list rows, failures;
        for (const auto& r : res.rows) rows.append(row_dict(r));
        for (const auto& f : res.failures) failures.append(py::make_tuple(f.power_w, f.message));
        return py::make_tuple(rows, failures);
      },
      py::arg("config"), "Run the configured sweep; returns (rows, failures).");

  m.def(
      "analytic_jsa",
      [](const ExperimentConfig& cfg, double power) {
        const WaveguideModel wg = cfg.make_waveguide();
        const PumpSpec pump = cfg.make_pump(power);
        const FrequencyGrid grid = cfg.make_grid(wg, pump);
        const AnalyticJsa j = analytic_jsa(wg, pump, grid);
        return py::make_tuple(j.matrix, RVector(grid.signal.nodes()), RVector(grid.idler.nodes()));
      },
      py::arg("config"), py::arg("power"), "Low-gain JSA on the config grid: (J, omega_s, omega_i).");

  m.def("metrics_from_r", [](const RVector& r) {
    const SpectralMetrics s = metrics_from_r(r);
    return py::dict(py::arg("purity") = s.purity, py::arg("gain") = s.gain, py::arg("gain_db") = s.gain_db,
                    py::arg("mode_weights") = s.mode_weights, py::arg("effective_modes") = s.effective_modes);
  });
  m.def("gain_to_db", &gain_to_db);
}
