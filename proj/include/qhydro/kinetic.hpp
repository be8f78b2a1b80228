#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qhydro/diff.hpp"
#include "qhydro/field.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/params.hpp"
#include "qhydro/quantum_potential.hpp"

namespace qhydro {

/// Periodic x grid times a cell-centred velocity grid on [-v_max, v_max].
class PhaseSpaceGrid {
 public:
  /// Throws InvalidArgument unless n_v >= 16, n_v is even and v_max > 0.
  PhaseSpaceGrid(const Grid1D& x_grid, std::size_t n_v, double v_max);

  const Grid1D& x_grid() const noexcept { return x_grid_; }
  std::size_t n_x() const noexcept { return x_grid_.n_points(); }
  std::size_t n_v() const noexcept { return n_v_; }
  double v_max() const noexcept { return v_max_; }
  double dv() const noexcept { return 2.0 * v_max_ / static_cast<double>(n_v_); }
  /// v_j = -v_max + (j + 1/2) dv
  double v(std::size_t j) const noexcept { return -v_max_ + (static_cast<double>(j) + 0.5) * dv(); }
  double cell_area() const noexcept { return x_grid_.spacing() * dv(); }

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;

 private:
  Grid1D x_grid_;
  std::size_t n_v_;
  double v_max_;
};

/// 1-particle distribution f(x, v), stored row-major: f[i * n_v + j] = f(x_i, v_j).
struct PhaseSpaceState {
  PhaseSpaceGrid grid;
  std::vector<double> f;
  double time = 0.0;

  explicit PhaseSpaceState(const PhaseSpaceGrid& grid_, double time_ = 0.0);
  PhaseSpaceState(const PhaseSpaceGrid& grid_, std::vector<double> f_, double time_ = 0.0);

  double& at(std::size_t i, std::size_t j) { return f[i * grid.n_v() + j]; }
  double at(std::size_t i, std::size_t j) const { return f[i * grid.n_v() + j]; }
  /// Double integral of f over phase space.
  double total() const;
  /// Rescales f so that total() == 1.
  void normalize();
};

enum class VelocityAdvection {
  /// Periodic spectral translation along v. Conserves the v-integral exactly.
  Spectral,
  /// Monotone (Fritsch-Carlson) cubic Hermite semi-Lagrangian interpolation.
  MonotoneCubic,
};

std::string_view to_string(VelocityAdvection scheme);
VelocityAdvection parse_velocity_advection(std::string_view name);

struct KineticOptions {
  VelocityAdvection v_advection = VelocityAdvection::Spectral;
  DiffScheme force_scheme = DiffScheme::Spectral;
  QuantumForceForm force_form = QuantumForceForm::GradientOfPotential;
  VacuumPolicy vacuum;
  /// CutoffBreach is raised when the mass fraction with |v| > 0.9 v_max exceeds this.
  double cutoff_tolerance = 1e-8;
};

/// Per-step diagnostics.
struct KineticStepReport {
  /// Mass removed by clipping negative values to zero.
  double clipped_mass = 0.0;
  /// Mass fraction with |v| > 0.9 v_max after the step.
  double boundary_fraction = 0.0;
};

/// Acceleration -(1/m) d(V + Q)/dx with Q built from n = n_total * int f dv.
ScalarField kinetic_acceleration(const PhaseSpaceState& state, const PhysParams& params,
                                 const ExternalPotential& vext, double n_total,
                                 const KineticOptions& options = {});

/// Step limit min(dx / v_max, dv / max|a|, m dx^2 / (pi hbar)) for the current state.
/// The last term is the quantum-dispersion limit; the Bohm force makes the split
/// scheme unstable beyond it.
double kinetic_max_dt(const PhaseSpaceState& state, const PhysParams& params,
                      const ExternalPotential& vext, double n_total, const KineticOptions& options = {});

/// One Strang step of the 1-particle Liouville equation
///   f_t + v f_x + a(x) f_v = 0,  a = -(1/m) d/dx [V - (hbar^2/2m) (sqrt n)'' / sqrt n]:
/// half spectral x-translation, full v-translation with a rebuilt from the current density,
/// half x-translation. Negative values are clipped.
/// Throws CflViolation, CutoffBreach, InvalidArgument (f < 0 or total not 1 within 1e-6).
PhaseSpaceState liouville_step(const PhaseSpaceState& state, const PhysParams& params,
                               const ExternalPotential& vext, double n_total, double dt,
                               const KineticOptions& options = {},
                               KineticStepReport* report = nullptr);

/// Velocity-space prefactor of the pressure: 1 for one velocity dimension, 1/3 for three.
enum class PressureConvention { OneD, ThreeD };

struct KineticMoments {
  ScalarField rho;
  ScalarField u;
  ScalarField p;
  ScalarField temp;
  ScalarField q;
};

/// rho = N m int f dv, u = int v f dv / int f dv, p = c N m int dv^2 f dv (c = 1 or 1/3),
/// temp = p / (n kappa), q = (1/2) N m int dv^3 f dv with dv = v - u(x).
/// Throws DivisionNearVacuum where int f dv falls to the vacuum floor.
KineticMoments moments(const PhaseSpaceState& state, const PhysParams& params, double n_total,
                       PressureConvention convention = PressureConvention::OneD,
                       const VacuumPolicy& vacuum = {});

/// Max-norm residuals of the fluid equations evaluated on kinetic moments, with
/// centred time differences over interior trajectory states.
struct MomentResidualReport {
  /// rho_t + (rho u)'
  double continuity = 0.0;
  /// u_t + u u' + p'/rho + V'/m - F_Q
  double momentum = 0.0;
  /// Exact second-moment balance of the 1D1V equation, T_t + u T' + 2 T u' + 2 c q' / (n kappa)
  /// with c the pressure prefactor.
  double heat = 0.0;
  /// The zero-viscosity heat equation as usually quoted for a perfect fluid:
  /// T_t + (T u)' + (2 m / 3 rho kappa) q'. Differs from `heat` by a T u' term.
  double heat_perfect_fluid = 0.0;
  std::size_t samples = 0;
};

/// Throws InsufficientTrajectory for fewer than 3 states.
MomentResidualReport moment_residuals(std::span<const PhaseSpaceState> trajectory,
                                      const PhysParams& params, double n_total,
                                      const ExternalPotential& vext,
                                      PressureConvention convention = PressureConvention::OneD,
                                      const KineticOptions& options = {});

/// f proportional to density(x) * exp(-(v - velocity(x))^2 / (2 sigma_v^2)), normalized to 1.
PhaseSpaceState gaussian_velocity_state(const PhaseSpaceGrid& grid,
                                        const std::function<double(double)>& density,
                                        const std::function<double(double)>& velocity,
                                        double sigma_v);

/// Uniform Maxwellian at temperature T0, sigma_v^2 = kappa T0 / m.
PhaseSpaceState maxwellian_state(const PhaseSpaceGrid& grid, const PhysParams& params, double T0);

/// Cold beam n(x) delta_eps(v - u(x)) with a narrow Gaussian of width eps.
PhaseSpaceState cold_beam_state(const PhaseSpaceGrid& grid,
                                const std::function<double(double)>& density,
                                const std::function<double(double)>& velocity, double eps);

/// `x,v,f` rows in row-major order.
void write_phase_space_csv(const std::filesystem::path& path, const PhaseSpaceState& state);
PhaseSpaceState read_phase_space_csv(const std::filesystem::path& path);

}  // namespace qhydro
