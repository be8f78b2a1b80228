#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qhydro/diff.hpp"
#include "qhydro/field.hpp"
#include "qhydro/params.hpp"
#include "qhydro/quantum_potential.hpp"

namespace qhydro {

/// Hydrodynamic unknowns: mass density, velocity and (optionally) temperature.
struct FluidState {
  ScalarField rho;
  ScalarField u;
  std::optional<ScalarField> temp;
  double time = 0.0;

  FluidState(ScalarField rho_, ScalarField u_, std::optional<ScalarField> temp_ = std::nullopt,
             double time_ = 0.0);

  const Grid1D& grid() const noexcept { return rho.grid(); }
  /// Total mass, integral of rho.
  double mass() const;
  /// Total momentum, integral of rho*u.
  double momentum() const;
};

struct FluidDerivative {
  ScalarField drho;
  ScalarField du;
  std::optional<ScalarField> dtemp;
};

// Pressure closures for the perfect fluid. The heat flux is taken as zero.
struct Pressureless {};
struct Isothermal {
  double temperature = 0.0;
};
struct IdealGasHeat {};
using ClosureModel = std::variant<Pressureless, Isothermal, IdealGasHeat>;

std::string_view closure_name(const ClosureModel& closure);

/// Time-independent external potential energy V(x), optionally with an analytic gradient.
class ExternalPotential {
 public:
  explicit ExternalPotential(ScalarField values);
  ExternalPotential(ScalarField values, ScalarField gradient);

  static ExternalPotential none(const Grid1D& grid);
  /// V = m omega^2 (x - center)^2 / 2 sampled on [0, L); the gradient is supplied analytically.
  static ExternalPotential harmonic(const Grid1D& grid, const PhysParams& params, double omega,
                                    double center);
  /// Smooth periodic trap whose exact ground-state amplitude is exp(beta cos(2 pi (x-c)/L)):
  /// V = (hbar^2 kappa^2 / 2m) (beta^2 sin^2 + beta (1 - cos)), kappa = 2 pi / L.
  /// Harmonic near x = center.
  static ExternalPotential periodic_trap(const Grid1D& grid, const PhysParams& params, double beta,
                                         double center);

  const ScalarField& values() const noexcept { return values_; }
  /// dV/dx: the analytic gradient when one was supplied, otherwise differentiated with `scheme`.
  ScalarField gradient(DiffScheme scheme) const;
  bool is_zero() const noexcept { return zero_; }

 private:
  ScalarField values_;
  std::optional<ScalarField> gradient_;
  bool zero_ = false;
};

enum class FluidModel {
  /// Continuity + quantum Euler with pressure closure + heat equation.
  Perfect,
  /// Continuity + quantum Euler with the Gross-Pitaevskii mean-field term; no pressure or T.
  GrossPitaevskii,
};

/// Everything the right-hand side needs besides the state.
struct HydroSystem {
  FluidModel model = FluidModel::GrossPitaevskii;
  PhysParams params;
  ClosureModel closure = Pressureless{};
  std::optional<ExternalPotential> vext;
  DiffScheme scheme = DiffScheme::Spectral;
  VacuumPolicy vacuum;
  QuantumForceForm force_form = QuantumForceForm::GradientOfPotential;
};

enum class Integrator { RK4 };

struct StepControl {
  double dt = 1e-4;
  Integrator integrator = Integrator::RK4;
  double cfl_safety = 0.5;
  /// Exponential filter on the stage derivatives (spectral scheme only).
  bool filter = true;
  double filter_strength = 36.0;
  int filter_order = 36;
};

/// Perfect-fluid derivatives (continuity, quantum Euler, heat with zero flux).
/// Throws NegativeDensity, ClosureMismatch (IdealGasHeat without temp).
FluidDerivative rhs_perfect(const FluidState& state, const HydroSystem& system);
/// Gross-Pitaevskii fluid derivatives (continuity, quantum Euler with -(G/m) d rho/dx).
FluidDerivative rhs_gp(const FluidState& state, const HydroSystem& system);
/// Dispatches on system.model.
FluidDerivative rhs(const FluidState& state, const HydroSystem& system);

/// Largest dt allowed before the safety factor: min(dx / (max|u| + c_s), m dx^2 / (pi hbar)).
double max_stable_dt(const FluidState& state, const HydroSystem& system);

/// One RK4 step. Throws CflViolation, NegativeDensity (dip below -1e-12 max rho), BlowUp.
FluidState step(const FluidState& state, const HydroSystem& system, const StepControl& control);

struct SimulationRecord {
  std::vector<FluidState> snapshots;
  /// Conserved quantities sampled at the snapshot times.
  std::vector<double> series_time;
  std::vector<double> mass;
  std::vector<double> momentum;
  /// Largest |M(t) - M(0)| / M(0) over every step, not just snapshots.
  double max_mass_drift = 0.0;
  /// Largest |P(t) - P(0)| / ||rho u||_1(0) over every step (0 when ||rho u||_1 = 0).
  double max_momentum_drift = 0.0;
  std::size_t steps = 0;
};

using StepObserver = std::function<void(const FluidState&, std::size_t step_index)>;

/// Repeated step() up to t_end, keeping every `snapshot_every`-th state plus the last.
/// The final step is shortened to land exactly on t_end.
SimulationRecord run_simulation(const FluidState& initial, const HydroSystem& system,
                                const StepControl& control, double t_end,
                                std::size_t snapshot_every, const StepObserver& observer = {});

}  // namespace qhydro
