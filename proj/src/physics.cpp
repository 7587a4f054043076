#include "hgpdc/physics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hgpdc/errors.hpp"

namespace hgpdc {

using std::numbers::pi;

const char* to_string(ModeLabel label) {
  switch (label) {
    case ModeLabel::pump: return "pump";
    case ModeLabel::signal: return "signal";
    case ModeLabel::idler: return "idler";
  }
  return "?";
}

const char* to_string(PhasematchingKind kind) {
  return kind == PhasematchingKind::sinc_qpm ? "sinc" : "gaussian";
}

PhasematchingKind phasematching_kind_from_string(const std::string& name) {
  if (name == "sinc" || name == "sincQPM") return PhasematchingKind::sinc_qpm;
  if (name == "gaussian" || name == "gauss" || name == "gaussianApodized")
    return PhasematchingKind::gaussian_apodized;
  throw ConfigError("unknown phasematching kind '" + name + "' (expected sinc or gaussian)");
}

ModeDispersion ModeDispersion::from_group_index(ModeLabel label, double omega0, double ng,
                                                const PhysicalConstants& pc) {
  ModeDispersion m;
  m.label = label;
  m.omega0 = omega0;
  m.ng = ng;
  m.vg = pc.c / ng;
  m.k0 = ng * omega0 / pc.c;
  return m;
}

void ModeDispersion::validate(const PhysicalConstants& pc) const {
  const std::string who = std::string(to_string(label)) + " mode";
  if (!(vg > 0.0)) throw ConfigError(who + ": group velocity must be positive");
  if (!(omega0 > 0.0)) throw ConfigError(who + ": carrier frequency must be positive");
  if (std::abs(ng - pc.c / vg) > 1e-12 * ng)
    throw ConfigError(who + ": group index inconsistent with group velocity");
}

double PhasematchingSpec::grating_wavevector() const { return qpm_order * 2.0 * pi / poling_period; }

void PhasematchingSpec::validate() const {
  if (!(poling_period > 0.0)) throw ConfigError("poling period must be positive");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0)) throw ConfigError("duty cycle must lie in (0, 1)");
  if (qpm_order != 1 && qpm_order != -1) throw ConfigError("QPM order must be +1 or -1");
  if (kind == PhasematchingKind::gaussian_apodized && !(gaussian_width_factor > 0.0))
    throw ConfigError("gaussian phasematching requires a positive width factor");
}

void WaveguideModel::validate() const {
  pump.validate(constants);
  signal.validate(constants);
  idler.validate(constants);
  if (!(length > 0.0)) throw ConfigError("waveguide length must be positive");
  poling.validate();
  if (std::abs(pump.omega0 - signal.omega0 - idler.omega0) > 1e-9 * pump.omega0)
    throw ConfigError("carrier frequencies violate energy conservation");
}

void PumpSpec::validate() const {
  if (!(omega0 > 0.0)) throw ConfigError("pump carrier must be positive");
  if (!(sigma > 0.0)) throw ConfigError("pump bandwidth must be positive");
  if (!(peak_power >= 0.0)) throw ConfigError("pump power must be non-negative");
}

WaveguideModel make_waveguide(const WaveguideParams& p) {
  const auto& pc = p.constants;
  const double ws = p.omega_signal > 0.0 ? p.omega_signal : 0.5 * p.omega_pump;
  const double wi = p.omega_pump - ws;
  if (!(wi > 0.0)) throw ConfigError("signal carrier must lie below the pump carrier");

  WaveguideModel wg;
  wg.constants = pc;
  wg.pump = ModeDispersion::from_group_index(ModeLabel::pump, p.omega_pump, p.pump_group_index, pc);
  wg.signal = ModeDispersion::from_group_index(ModeLabel::signal, ws, p.signal_group_index, pc);
  wg.idler = ModeDispersion::from_group_index(ModeLabel::idler, wi, p.idler_group_index, pc);
  wg.length = p.length;
  wg.overlap = p.overlap;
  wg.poling.kind = p.kind;
  wg.poling.duty_cycle = p.duty_cycle;
  wg.poling.gaussian_width_factor =
      p.gaussian_width_factor > 0.0 ? p.gaussian_width_factor : default_gaussian_width_factor();

  const double dk0 = wg.pump.k0 - wg.signal.k0 - wg.idler.k0;
  if (dk0 == 0.0) throw ConfigError("carrier mismatch vanishes; no QPM period exists");
  wg.poling.poling_period = 2.0 * pi / std::abs(dk0);
  wg.poling.qpm_order = dk0 > 0.0 ? 1 : -1;
  wg.validate();
  return wg;
}

double propagation_constant(const ModeDispersion& mode, double omega) {
  return mode.k0 + (omega - mode.omega0) / mode.vg;
}

double delta_k(const WaveguideModel& wg, double omega_s, double omega_i, double omega_p) {
  return propagation_constant(wg.pump, omega_p) - propagation_constant(wg.signal, omega_s) -
         propagation_constant(wg.idler, omega_i);
}

double theta_angle(double vp, double vs, double vi) {
  if (vi == vp) throw DegenerateDispersion("theta undefined: idler and pump group velocities coincide");
  const double arg = -((vs - vp) / (vi - vp)) * (vi / vs);
  return std::atan(arg) * 180.0 / pi;
}

double theta_angle(const WaveguideModel& wg) {
  return theta_angle(wg.pump.vg, wg.signal.vg, wg.idler.vg);
}

double signal_velocity_for_angle(double theta_deg, double vp, double vi) {
  // tan(theta) (vi - vp) vs = -(vs - vp) vi  =>  vs = vp vi / (tan(theta) (vi - vp) + vi)
  const double t = std::tan(theta_deg * pi / 180.0);
  const double denom = t * (vi - vp) + vi;
  if (!(denom > 0.0)) throw DegenerateDispersion("requested angle has no positive signal velocity");
  return vp * vi / denom;
}

double pump_envelope(const PumpSpec& pump, double omega_p) {
  const double x = (omega_p - pump.omega0) / pump.sigma;
  return std::exp(-0.5 * x * x);
}

double gamma_p(const PumpSpec& pump, const PhysicalConstants& pc) {
  return std::sqrt(pump.peak_power / (4.0 * pi * pc.eps0 * pc.c * pump.sigma * pump.sigma));
}

cdouble poling_fourier_coefficient(const PhasematchingSpec& spec, int m) {
  const double d = spec.duty_cycle;
  if (m == 0) return {2.0 * d - 1.0, 0.0};
  const double a = m * pi * d;
  return (2.0 / (m * pi)) * std::sin(a) * std::polar(1.0, -a);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

cdouble phasematching_of_mismatch(const WaveguideModel& wg, double residual) {
  const double amplitude = 2.0 / pi;
  if (wg.poling.kind == PhasematchingKind::sinc_qpm) {
    const double x = 0.5 * residual * wg.length;
    return amplitude * sinc(x) * std::polar(1.0, x);
  }
  const double y = residual * wg.length * wg.poling.gaussian_width_factor;
  return {amplitude * std::exp(-0.5 * y * y), 0.0};
}

cdouble phasematching_value(const WaveguideModel& wg, double omega_s, double omega_i,
                            double omega_p) {
  const double residual =
      delta_k(wg, omega_s, omega_i, omega_p) - wg.poling.grating_wavevector();
  return phasematching_of_mismatch(wg, residual);
}

double default_gaussian_width_factor() {
  // Half-maximum point of sin(x)/x on the main lobe, by bisection.
  static const double factor = [] {
    double lo = 1.0, hi = 2.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (sinc(mid) > 0.5 ? lo : hi) = mid;
    }
    const double x_half = 0.5 * (lo + hi);
    // sinc FWHM in dk: 4 x_half / L; gaussian FWHM: 2 sqrt(2 ln 2) / (sigma L).
    return std::sqrt(2.0 * std::log(2.0)) / (2.0 * x_half);
  }();
  return factor;
}

double phasematching_bandwidth(const WaveguideModel& wg) {
  const double slope_s = std::abs(1.0 / wg.signal.vg - 1.0 / wg.pump.vg);
  const double slope_i = std::abs(1.0 / wg.idler.vg - 1.0 / wg.pump.vg);
  const double slope = std::max(slope_s, slope_i);
  if (slope == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * pi / (wg.length * slope);
}

}  // namespace hgpdc
