#include "qhydro/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "qhydro/error.hpp"

namespace qhydro::scenarios {

PhysParams unit_condensate() {
  PhysParams p;
  p.scatter_len = 1.0 / (4.0 * std::numbers::pi);
  return p;
}

DispersionPair bogoliubov_runs(const PhysParams& params, std::span<const long> modes,
                               std::size_t n_points, double length, double amplitude) {
  DispersionOptions opt;
  opt.n_points = n_points;
  opt.length = length;
  const double dt = dispersion_time_step(params, amplitude, modes, opt);
  DispersionPair out;
  out.hydro = measure_dispersion_periods(DispersionSource::NonlinearHydroGP, modes, amplitude, params, 5.0, dt, opt);
  out.gp = measure_dispersion_periods(DispersionSource::GpOracle, modes, amplitude, params, 5.0, dt, opt);
  return out;
}

EquivalenceRun oracle_equivalence_run(const PhysParams& params, double t_end) {
  const auto start = std::chrono::steady_clock::now();
  const Grid1D grid(128, 2.0 * std::numbers::pi);
  const FluidState init(
      ScalarField::from_function(grid, [&](double x) {
        return params.rho0 * (1.0 + 0.2 * std::cos(x) + 0.1 * std::sin(2.0 * x));
      }),
      ScalarField::from_function(grid, [](double x) { return 0.1 * std::sin(x); }));

  HydroSystem sys;
  sys.model = FluidModel::GrossPitaevskii;
  sys.params = params;
  StepControl control;
  const double dt = 0.9 * control.cfl_safety * max_stable_dt(init, sys);
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  control.dt = t_end / static_cast<double>(n_steps);

  FluidState s = init;
  for (std::size_t k = 0; k < n_steps; ++k) s = step(s, sys, control);

  const double n_total = integrate(init.rho) / params.mass;
  WaveFunction wf = madelung_compose(init, params, n_total);
  GpPropagator prop(grid, params, ExternalPotential::none(grid), n_total, control.dt);
  for (std::size_t k = 0; k < n_steps; ++k) prop.step(wf);
  ScalarField rho_gp = wf.psi.modulus_squared();
  rho_gp *= params.mass * n_total;

  EquivalenceRun out{s.rho, rho_gp, 0.0};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

double weighted_velocity(const ScalarField& rho, const ScalarField& u) {
  const double cut = 1e-6 * rho.max();
  double m = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] > cut) m = std::max(m, std::abs(u[i]));
  }
  return m;
}

double density_change(const ScalarField& a, const ScalarField& b) {
  return (a - b).max_abs() / b.max();
}

}  // namespace

DriftRates hydro_drift(const FluidState& initial, const HydroSystem& system, double t_end, double dt) {
  StepControl control;
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  control.dt = t_end / static_cast<double>(n_steps);
  FluidState s = initial;
  for (std::size_t k = 0; k < n_steps; ++k) s = step(s, system, control);
  return {density_change(s.rho, initial.rho) / t_end, weighted_velocity(s.rho, s.u) / t_end};
}

DriftRates gp_drift(const WaveFunction& initial, const PhysParams& params, const ExternalPotential& vext,
                    double n_total, double t_end, double dt) {
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  GpPropagator prop(initial.grid(), params, vext, n_total, t_end / static_cast<double>(n_steps));
  WaveFunction wf = initial;
  for (std::size_t k = 0; k < n_steps; ++k) prop.step(wf);
  const FluidState a = madelung_decompose(initial, params, n_total);
  const FluidState b = madelung_decompose(wf, params, n_total);
  // the stationary phase rotates uniformly, so u stays at its initial value
  return {density_change(b.rho, a.rho) / t_end, weighted_velocity(b.rho, b.u - a.u) / t_end};
}

MomentResidualReport cold_beam_residuals(std::size_t n_x, std::size_t n_v, double dt, double t_end,
                                         DiffScheme scheme) {
  PhysParams p;
  KineticOptions opt;
  opt.force_scheme = scheme;
  const PhaseSpaceGrid grid(Grid1D(n_x, 2.0 * std::numbers::pi), n_v, 0.6);
  const ExternalPotential vext = ExternalPotential::none(grid.x_grid());
  const double n_total = 1.0;
  const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
  // Only a three-state window is kept; residuals are maxed over windows.
  std::vector<PhaseSpaceState> window{cold_beam_state(
      grid, [](double x) { return 1.0 + 0.2 * std::cos(x); }, [](double x) { return 0.1 * std::sin(x); }, 0.05)};
  MomentResidualReport worst;
  for (std::size_t k = 0; k < n_steps; ++k) {
    window.push_back(liouville_step(window.back(), p, vext, n_total, dt, opt));
    if (window.size() > 3) window.erase(window.begin());
    if (window.size() < 3) continue;
    const MomentResidualReport r = moment_residuals(window, p, n_total, vext, PressureConvention::OneD, opt);
    worst.continuity = std::max(worst.continuity, r.continuity);
    worst.momentum = std::max(worst.momentum, r.momentum);
    worst.heat = std::max(worst.heat, r.heat);
    worst.heat_perfect_fluid = std::max(worst.heat_perfect_fluid, r.heat_perfect_fluid);
    worst.samples += r.samples;
  }
  return worst;
}

}  // namespace qhydro::scenarios
