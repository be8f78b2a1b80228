#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "qhydro/diff.hpp"
#include "qhydro/field.hpp"
#include "qhydro/params.hpp"

namespace qhydro {

/// sqrt(4 pi hbar^2 a rho0 / m^3); zero for a non-interacting gas.
double sound_speed(const PhysParams& params);

/// Bogolyubov dispersion omega(k) = sqrt(c_s^2 k^2 + hbar^2 k^4 / 4m^2).
double bogoliubov_omega(double k, const PhysParams& params);

/// Dimensionless u0 r0 m / hbar. Values near 1 mean the quantum term matters.
double heisenberg_scale(double u0, double r0, const PhysParams& params);

namespace si {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J / K
inline constexpr double helium4_mass = 6.6464731e-27;  // kg
}  // namespace si

/// SI constants for helium-4 (a and rho0 left at liquid-helium-like placeholders).
PhysParams helium4_params();

/// First-order perturbations about a uniform condensate at rest.
struct AcousticState {
  ScalarField rho1;
  ScalarField u1;
  double time = 0.0;
};

/// True while max|rho1| <= 0.05 rho0, the regime where linearization is trustworthy.
bool in_linear_regime(const AcousticState& state, const PhysParams& params);

/// Largest dt for acoustic_step: min(dx / c_s, m dx^2 / (pi hbar)).
double acoustic_max_dt(const Grid1D& grid, const PhysParams& params);

/// RK4 step of
///   d rho1/dt = -rho0 du1/dx
///   du1/dt    = -(c_s^2 / rho0) d rho1/dx + (hbar^2 / 4 m^2 rho0) d^3 rho1/dx^3.
/// Throws CflViolation when dt exceeds acoustic_max_dt.
AcousticState acoustic_step(const AcousticState& state, const PhysParams& params, double dt,
                            DiffScheme scheme = DiffScheme::Spectral);

/// Quadratic invariant of the linear system:
///   int rho0 u1^2/2 + c_s^2 rho1^2/(2 rho0) + hbar^2 (rho1')^2 / (8 m^2 rho0) dx.
double acoustic_energy(const AcousticState& state, const PhysParams& params,
                       DiffScheme scheme = DiffScheme::Spectral);

enum class DispersionSource { LinearAcoustic, NonlinearHydroGP, GpOracle };
std::string_view to_string(DispersionSource source);
DispersionSource parse_dispersion_source(std::string_view name);

enum class ModeShape { Traveling, Standing };

struct DispersionEntry {
  long mode = 0;
  double k = 0.0;
  double omega_measured = 0.0;
  double omega_analytic = 0.0;
  double rel_err = 0.0;
};

struct DispersionCurve {
  std::vector<DispersionEntry> entries;
  double max_rel_err() const;
};

struct DispersionOptions {
  std::size_t n_points = 256;
  double length = 6.283185307179586;
  ModeShape shape = ModeShape::Traveling;
  DiffScheme scheme = DiffScheme::Spectral;
  /// Hydro steps require dt <= cfl_safety * max_stable_dt.
  double cfl_safety = 0.5;
  /// Phase samples per period of each mode.
  std::size_t samples_per_period = 32;
  /// Evaluate modes on worker threads.
  bool parallel = true;
};

/// Excites each mode j (k = 2 pi j / L) of a uniform condensate with density
/// amplitude `amplitude`, evolves it with the chosen engine for t_end, and fits
/// omega from the phase slope of the mode's Fourier coefficient of rho.
///
/// Traveling modes are phase-locked eigenmodes: u1 = amplitude * omega / (rho0 k) * cos(kx).
/// Throws InvalidArgument if amplitude > 0.01 rho0 for a nonlinear source or if
/// t_end is shorter than five periods of the slowest mode; FitFailed on a
/// non-monotone phase series; solver errors propagate.
DispersionCurve measure_dispersion(DispersionSource source, std::span<const long> modes,
                                   double amplitude, const PhysParams& params, double t_end,
                                   double dt, const DispersionOptions& options = {});

/// As measure_dispersion, but each mode runs for `periods` (>= 5) of its own
/// analytic period, so fast modes do not pay for the slowest one.
DispersionCurve measure_dispersion_periods(DispersionSource source, std::span<const long> modes,
                                           double amplitude, const PhysParams& params, double periods,
                                           double dt, const DispersionOptions& options = {});

/// A dt that satisfies the hydro and acoustic limits for every requested mode at this amplitude.
double dispersion_time_step(const PhysParams& params, double amplitude, std::span<const long> modes,
                            const DispersionOptions& options = {});

/// Least-squares slope of the unwrapped phase of z(t).
/// Throws FitFailed if the unwrapped phase is not monotone or |z| collapses.
double fit_phase_slope(std::span<const double> t, std::span<const std::complex<double>> z);

/// Analytic signal of a real series via the discrete Hilbert transform.
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

/// `k,omega_measured,omega_analytic,rel_err`
void write_dispersion_csv(const std::filesystem::path& path, const DispersionCurve& curve);
DispersionCurve read_dispersion_csv(const std::filesystem::path& path);

}  // namespace qhydro
