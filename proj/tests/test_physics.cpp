#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hgpdc/errors.hpp"
#include "hgpdc/physics.hpp"

using namespace hgpdc;
using doctest::Approx;
using std::numbers::pi;

namespace {

constexpr double c = kCodata.c;

WaveguideModel table_row(double ng_s, double length = 2.5e-3,
                         PhasematchingKind kind = PhasematchingKind::sinc_qpm) {
  WaveguideParams p;
  p.signal_group_index = ng_s;
  p.length = length;
  p.kind = kind;
  return make_waveguide(p);
}

}  // namespace

TEST_SUITE("physics") {

TEST_CASE("propagation constant is the linear expansion") {
  const WaveguideModel wg = table_row(2.426, 1.66e-3);
  CHECK(propagation_constant(wg.pump, wg.pump.omega0) == wg.pump.k0);
  CHECK(propagation_constant(wg.pump, wg.pump.omega0 + wg.pump.vg) == Approx(wg.pump.k0 + 1.0).epsilon(1e-15));
  const double dk = propagation_constant(wg.signal, wg.signal.omega0 + 1e12) - wg.signal.k0;
  CHECK(dk == Approx(1e12 * 2.426 / c).epsilon(1e-9));
  CHECK(std::abs(dk - 8093.0) < 1.0);
}

TEST_CASE("delta_k linear terms") {
  const WaveguideModel wg0 = table_row(2.168);
  const double ws = wg0.signal.omega0, wi = wg0.idler.omega0, wp = wg0.pump.omega0;
  const double central = delta_k(wg0, ws, wi, wp);
  CHECK(std::abs(central) == Approx(2.0 * pi / wg0.poling.poling_period).epsilon(1e-12));
  CHECK(central - wg0.poling.grating_wavevector() == Approx(0.0).epsilon(1e-9));
  CHECK(delta_k(wg0, ws, wi, wp + 1e12) - central == Approx(7231.6).epsilon(1e-4));

  const WaveguideModel wg45 = table_row(2.426, 1.66e-3);
  const double c45 = delta_k(wg45, ws, wi, wp);
  CHECK(delta_k(wg45, ws + 1e12, wi, wp + 1e12) - c45 == Approx(-860.6).epsilon(1e-3));
}

TEST_CASE("delta_k is affine: second differences vanish") {
  const WaveguideModel wg = table_row(2.426, 1.66e-3);
  const double h = 3e11;
  const double ws = wg.signal.omega0, wi = wg.idler.omega0, wp = wg.pump.omega0;
  const double scale = std::abs(delta_k(wg, ws, wi, wp));
  const double d2s = delta_k(wg, ws + h, wi, wp) - 2 * delta_k(wg, ws, wi, wp) + delta_k(wg, ws - h, wi, wp);
  const double d2p = delta_k(wg, ws, wi, wp + h) - 2 * delta_k(wg, ws, wi, wp) + delta_k(wg, ws, wi, wp - h);
  CHECK(std::abs(d2s) < 1e-12 * scale);
  CHECK(std::abs(d2p) < 1e-12 * scale);
}

TEST_CASE("theta angle reproduces the Table I labels") {
  CHECK(theta_angle(table_row(2.168)) == Approx(0.0));
  CHECK(theta_angle(table_row(2.426)) == Approx(44.9).epsilon(0.2 / 44.9));
  CHECK(theta_angle(table_row(2.118)) == Approx(-10.9).epsilon(0.2 / 10.9));
}

TEST_CASE("theta angle depends only on velocity ratios") {
  const double vp = c / 2.168, vs = c / 2.426, vi = c / 1.909;
  for (double k : {0.5, 1.7, 3.0}) CHECK(theta_angle(k * vp, k * vs, k * vi) == Approx(theta_angle(vp, vs, vi)).epsilon(1e-13));
  CHECK_THROWS_AS(theta_angle(vp, vs, vp), DegenerateDispersion);
}

TEST_CASE("signal velocity for a requested angle inverts theta") {
  const double vp = c / 2.168, vi = c / 1.909;
  for (double th : {-11.0, 0.0, 40.0, 42.0, 45.0, 47.0, 50.0}) {
    CHECK(theta_angle(vp, signal_velocity_for_angle(th, vp, vi), vi) == Approx(th).epsilon(1e-12));
  }
  CHECK(signal_velocity_for_angle(0.0, vp, vi) == Approx(vp).epsilon(1e-15));
}

TEST_CASE("pump envelope") {
  PumpSpec pump{2.43e15, 0.003 * 2.43e15, 1.0};
  CHECK(pump_envelope(pump, pump.omega0) == 1.0);
  CHECK(pump_envelope(pump, pump.omega0 + pump.sigma) == Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(pump_envelope(pump, pump.omega0 + 5 * pump.sigma) == Approx(3.727e-6).epsilon(1e-3));
  double prev = 2.0;
  for (int k = 0; k <= 40; ++k) {
    const double d = k * 0.2 * pump.sigma;
    const double up = pump_envelope(pump, pump.omega0 + d);
    CHECK(up == pump_envelope(pump, pump.omega0 - d));
    CHECK(up < prev);
    prev = up;
  }
}

TEST_CASE("gamma_p") {
  PumpSpec pump{2.43e15, 0.003 * 2.43e15, 0.0};
  CHECK(gamma_p(pump) == 0.0);
  pump.peak_power = 68.54e-6;
  CHECK(gamma_p(pump) == Approx(6.22e-15).epsilon(0.01));
  PumpSpec quad = pump;
  quad.peak_power *= 4;
  CHECK(gamma_p(quad) == Approx(2 * gamma_p(pump)).epsilon(1e-15));
}

TEST_CASE("poling Fourier coefficients at 50% duty cycle") {
  PhasematchingSpec spec;
  spec.duty_cycle = 0.5;
  CHECK(std::abs(poling_fourier_coefficient(spec, 0)) < 1e-16);
  const cdouble f1 = poling_fourier_coefficient(spec, 1);
  CHECK(f1.real() == Approx(0.0).epsilon(1e-15));
  CHECK(f1.imag() == Approx(-2.0 / pi).epsilon(1e-15));
  const cdouble fm1 = poling_fourier_coefficient(spec, -1);
  CHECK(fm1.imag() == Approx(2.0 / pi).epsilon(1e-15));
  CHECK(std::abs(poling_fourier_coefficient(spec, 2)) < 1e-15);
  const cdouble f3 = poling_fourier_coefficient(spec, 3);
  CHECK(f3.imag() == Approx(-2.0 / (3 * pi)).epsilon(1e-14));
  CHECK(std::abs(f3.real()) < 1e-15);
}

TEST_CASE("sinc series branch is continuous") {
  CHECK(sinc(0.0) == 1.0);
  for (double x : {1e-5, 9.99e-5, 1.0001e-4, 1e-3}) CHECK(sinc(x) == Approx(std::sin(x) / x).epsilon(1e-15));
}

TEST_CASE("sinc phasematching") {
  const WaveguideModel wg = table_row(2.168);
  CHECK(std::abs(phasematching_of_mismatch(wg, 0.0) - cdouble(2.0 / pi)) < 1e-15);
  CHECK(std::abs(phasematching_of_mismatch(wg, 2.0 * pi / wg.length)) < 1e-15);
  for (double x : {0.1, 1.0, 3.0, 7.5, 20.0}) {
    const double res = 2.0 * x / wg.length;
    const cdouble plus = phasematching_of_mismatch(wg, res);
    const cdouble minus = phasematching_of_mismatch(wg, -res);
    CHECK(std::abs(plus - std::conj(minus)) < 1e-15);
    CHECK(std::abs(plus) < 2.0 / pi);
  }
  const cdouble at_center = phasematching_value(wg, wg.signal.omega0, wg.idler.omega0, wg.pump.omega0);
  CHECK(std::abs(at_center - cdouble(2.0 / pi)) < 1e-9);
}

TEST_CASE("gaussian phasematching is positive with the sinc main-lobe FWHM") {
  const WaveguideModel wg = table_row(2.168, 2.5e-3, PhasematchingKind::gaussian_apodized);
  CHECK(phasematching_of_mismatch(wg, 0.0).real() == Approx(2.0 / pi));
  for (double r = -2e4; r <= 2e4; r += 5e2) {
    const cdouble v = phasematching_of_mismatch(wg, r);
    CHECK(v.real() > 0.0);
    CHECK(v.imag() == 0.0);
  }
  // Half maximum of sinc at x = 1.89549 (x = dk L / 2) must be the gaussian's half maximum too.
  const double x_half = 1.8954942670339809;
  const double res = 2.0 * x_half / wg.length;
  CHECK(phasematching_of_mismatch(wg, res).real() / (2.0 / pi) == Approx(0.5).epsilon(1e-10));
  CHECK(default_gaussian_width_factor() == Approx(0.310581).epsilon(1e-5));
}

TEST_CASE("make_waveguide validates its inputs") {
  WaveguideParams p;
  p.length = -1.0;
  CHECK_THROWS_AS(make_waveguide(p), ConfigError);
  p = WaveguideParams{};
  p.duty_cycle = 1.0;
  CHECK_THROWS_AS(make_waveguide(p), ConfigError);
  p = WaveguideParams{};
  p.omega_signal = 3e15;
  CHECK_THROWS_AS(make_waveguide(p), ConfigError);
  const WaveguideModel wg = make_waveguide(WaveguideParams{});
  CHECK(wg.signal.omega0 + wg.idler.omega0 == Approx(wg.pump.omega0).epsilon(1e-15));
  CHECK(wg.poling.poling_period > 0.0);
  CHECK(wg.pump.ng == Approx(c / wg.pump.vg).epsilon(1e-15));
}

TEST_CASE("phasematching bandwidth") {
  const WaveguideModel wg = table_row(2.168);
  const double slope = std::abs(1.0 / wg.idler.vg - 1.0 / wg.pump.vg);
  CHECK(phasematching_bandwidth(wg) == Approx(2.0 * pi / (wg.length * slope)));
  WaveguideModel flat = wg;
  flat.idler.vg = flat.signal.vg = flat.pump.vg;
  CHECK(std::isinf(phasematching_bandwidth(flat)));
}

}  // TEST_SUITE
