#pragma once

// Dispersion, pump and phasematching evaluators for a three-wave chi(2)
// waveguide with linearized dispersion. Everything here is a pure function of
// its arguments; all quantities are SI (rad/s, 1/m, m, W).

#include <string>

#include "hgpdc/types.hpp"

namespace hgpdc {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double eps0 = 8.8541878128e-12; // F/m
  double c = 299792458.0;         // m/s
};

inline constexpr PhysicalConstants kCodata{};

enum class ModeLabel { pump, signal, idler };

const char* to_string(ModeLabel label);

/// Linearized dispersion of one guided mode around its carrier.
struct ModeDispersion {
  ModeLabel label = ModeLabel::pump;
  double omega0 = 0.0;  // carrier angular frequency
  double k0 = 0.0;      // propagation constant at omega0
  double vg = 0.0;      // group velocity
  double ng = 0.0;      // group index, c / vg

  /// Builds a mode from its group index; k0 defaults to ng * omega0 / c.
  static ModeDispersion from_group_index(ModeLabel label, double omega0, double ng,
                                         const PhysicalConstants& pc = kCodata);

  void validate(const PhysicalConstants& pc = kCodata) const;
};

enum class PhasematchingKind { sinc_qpm, gaussian_apodized };

const char* to_string(PhasematchingKind kind);
PhasematchingKind phasematching_kind_from_string(const std::string& name);

struct PhasematchingSpec {
  PhasematchingKind kind = PhasematchingKind::sinc_qpm;
  double poling_period = 0.0;          // Lambda (m)
  double duty_cycle = 0.5;             // D in (0, 1)
  double gaussian_width_factor = 0.0;  // sigma of the apodized profile; gaussian kind only
  int qpm_order = 1;                   // +1 or -1: which first-order harmonic compensates the mismatch

  double grating_wavevector() const;   // qpm_order * 2 pi / Lambda
  void validate() const;
};

struct WaveguideModel {
  ModeDispersion pump;
  ModeDispersion signal;
  ModeDispersion idler;
  double length = 0.0;   // poled length L (m)
  PhasematchingSpec poling;
  double overlap = 0.0;  // nonlinear mode-overlap M (1/V)
  PhysicalConstants constants;

  void validate() const;
};

struct PumpSpec {
  double omega0 = 0.0;      // rad/s
  double sigma = 0.0;       // spectral amplitude width (rad/s)
  double peak_power = 0.0;  // W

  void validate() const;
};

/// Inputs for `make_waveguide`. Central signal/idler frequencies default to
/// omega_p0 / 2 each when left at zero.
struct WaveguideParams {
  double pump_group_index = 2.168;
  double signal_group_index = 2.168;
  double idler_group_index = 1.909;
  double omega_pump = 2.43e15;
  double omega_signal = 0.0;
  double length = 2.5e-3;
  PhasematchingKind kind = PhasematchingKind::sinc_qpm;
  double duty_cycle = 0.5;
  double gaussian_width_factor = 0.0;  // 0 selects default_gaussian_width_factor()
  double overlap = 1e-6;
  PhysicalConstants constants;
};

/// Builds a waveguide whose poling period makes first-order QPM exact at the
/// carrier frequencies.
WaveguideModel make_waveguide(const WaveguideParams& params);

double propagation_constant(const ModeDispersion& mode, double omega);

/// k_p(omega_p) - k_s(omega_s) - k_i(omega_i).
double delta_k(const WaveguideModel& wg, double omega_s, double omega_i, double omega_p);

/// Phasematching angle in degrees, measured from the omega_s axis.
double theta_angle(const WaveguideModel& wg);
double theta_angle(double v_pump, double v_signal, double v_idler);

/// Signal group velocity that realizes `theta_deg` for fixed pump and idler velocities.
double signal_velocity_for_angle(double theta_deg, double v_pump, double v_idler);

double pump_envelope(const PumpSpec& pump, double omega_p);

/// Field prefactor sqrt(P / (4 pi eps0 c sigma^2)).
double gamma_p(const PumpSpec& pump, const PhysicalConstants& pc = kCodata);

/// Fourier coefficient f_m of a +-1 poling pattern with duty cycle D.
cdouble poling_fourier_coefficient(const PhasematchingSpec& spec, int m);

/// sin(x)/x with the removable singularity handled by series.
double sinc(double x);

/// Phasematching response as a function of the residual mismatch dk - 2 pi / Lambda.
cdouble phasematching_of_mismatch(const WaveguideModel& wg, double residual_mismatch);

cdouble phasematching_value(const WaveguideModel& wg, double omega_s, double omega_i,
                            double omega_p);

/// Gaussian width factor whose amplitude FWHM in dk equals that of the sinc main lobe.
double default_gaussian_width_factor();

/// Angular-frequency width of the phasematching main lobe along the steeper of
/// the signal/idler axes (pump following energy conservation). Infinite when
/// both slopes vanish.
double phasematching_bandwidth(const WaveguideModel& wg);

}  // namespace hgpdc
