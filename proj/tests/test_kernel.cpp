#include <doctest.h>

#include <cmath>

#include "hgpdc/config.hpp"
#include "hgpdc/kernel.hpp"
#include "hgpdc/propagator.hpp"

using namespace hgpdc;
using doctest::Approx;

namespace {

struct Setup {
  WaveguideModel wg;
  PumpSpec pump;
  FrequencyGrid grid;
};

Setup setup(const std::string& preset, double power, int n = 16, int np = 0, double safety = 1.2) {
  ExperimentConfig cfg = preset_config(preset);
  cfg.grid = {n, n, np};
  cfg.alias_safety = safety;
  Setup s;
  s.wg = cfg.make_waveguide();
  s.pump = cfg.make_pump(power);
  s.grid = cfg.make_grid(s.wg, s.pump);
  return s;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("zero pump power gives zero kernels") {
  const Setup s = setup("theta45-sinc-broadband", 0.0);
  const KernelFactory f(s.wg, s.pump, s.grid);
  const KernelSnapshot k = f.kernel_at(1e-12);
  CHECK(max_abs(k.g1) == 0.0);
  CHECK(max_abs(k.g2) == 0.0);
}

TEST_CASE("g2 is g1 with the roles exchanged") {
  const Setup s = setup("theta45-sinc-broadband", 1.0);
  const KernelFactory f(s.wg, s.pump, s.grid);
  for (double t : {-1e-13, 0.0, 3e-12, 9e-12}) {
    const KernelSnapshot k = f.kernel_at(t);
    CHECK(max_abs(k.g2 - k.g1.transpose()) <= 1e-12 * max_abs(k.g1));
  }
}

TEST_CASE("kernels scale with the square root of pump power") {
  const Setup a = setup("theta0-sinc-broadband", 1.0);
  const Setup b = setup("theta0-sinc-broadband", 4.0);
  const KernelSnapshot ka = KernelFactory(a.wg, a.pump, a.grid).kernel_at(5e-12);
  const KernelSnapshot kb = KernelFactory(b.wg, b.pump, b.grid).kernel_at(5e-12);
  CHECK(max_abs(kb.g1 - 2.0 * ka.g1) <= 1e-14 * max_abs(kb.g1));
}

TEST_CASE("pump quadrature at t = 0 against a refined trapezoid") {
  const Setup s = setup("theta45-sinc-broadband", 1.0, 12, 256);
  const KernelFactory f(s.wg, s.pump, s.grid);
  const FrequencyAxis fine = make_uniform_axis(s.pump.omega0, 0.5 * s.grid.pump.span(), 2 * 256 - 1);
  // Far from phasematching the integrand is small and oscillatory, so compare against the peak.
  const double peak = std::abs(f.pump_quadrature(5, 6, 0.0));
  for (Eigen::Index i : {0, 5, 11}) {
    for (Eigen::Index j : {0, 6, 10}) {
      const double ws = s.grid.signal.node(j), wi = s.grid.idler.node(i);
      cdouble ref = 0.0;
      for (Eigen::Index p = 0; p < fine.size(); ++p) {
        const double wp = fine.node(p);
        ref += fine.weights[p] * pump_envelope(s.pump, wp) * phasematching_value(s.wg, ws, wi, wp);
      }
      const cdouble q = f.pump_quadrature(i, j, 0.0);
      CHECK(std::abs(q - ref) <= 1e-6 * peak);
    }
  }
}

TEST_CASE("kernel vanishes outside the interaction window") {
  // Alias period chosen to cover the probe times as well as the window.
  const Setup s = setup("theta0-sinc-broadband", 1.0, 16, 0, 3.0);
  const KernelFactory f(s.wg, s.pump, s.grid);
  const TimeWindow w = interaction_window(s.wg, s.pump);
  double peak = 0.0;
  for (int k = 0; k <= 64; ++k) peak = std::max(peak, max_abs(f.kernel_at(w.t0 + (w.t1 - w.t0) * k / 64.0).g1));
  const double tail = 2.0 / s.pump.sigma;
  CHECK(max_abs(f.kernel_at(w.t1 + tail).g1) < 1e-6 * peak);
  CHECK(max_abs(f.kernel_at(w.t0 - tail).g1) < 1e-6 * peak);
}

TEST_CASE("pump refinement changes kernels by less than 1e-6") {
  const Setup a = setup("theta0-sinc-broadband", 1.0, 16, 304);
  const Setup b = setup("theta0-sinc-broadband", 1.0, 16, 607);
  const KernelFactory fa(a.wg, a.pump, a.grid), fb(b.wg, b.pump, b.grid);
  const TimeWindow w = interaction_window(a.wg, a.pump);
  for (double frac : {0.1, 0.5, 0.9}) {
    const double t = w.t0 + frac * (w.t1 - w.t0);
    const CMatrix ga = fa.kernel_at(t).g1, gb = fb.kernel_at(t).g1;
    CHECK(max_abs(ga - gb) < 1e-6 * max_abs(gb));
  }
}

TEST_CASE("weighted couplings match the snapshot in the weighted convention") {
  const Setup s = setup("theta45-gauss-broadband", 2.0);
  const KernelFactory f(s.wg, s.pump, s.grid);
  const double times[] = {-2e-12, 0.0, 4e-12};
  std::vector<CMatrix> out;
  f.weighted_couplings(times, out);
  REQUIRE(out.size() == 3);
  const RVector ws = s.grid.signal.weights.cwiseSqrt(), wi = s.grid.idler.weights.cwiseSqrt();
  for (int k = 0; k < 3; ++k) {
    const KernelSnapshot snap = f.kernel_at(times[k]);
    const CMatrix expect = (wi.asDiagonal() * snap.g1 * ws.asDiagonal()).transpose() / snap.hbar;
    CHECK(max_abs(out[k] - expect) <= 1e-12 * max_abs(expect));
  }
}

}  // TEST_SUITE
