#include "qhydro/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qhydro/acoustics.hpp"
#include "qhydro/error.hpp"
#include "qhydro/gp_oracle.hpp"
#include "qhydro/kinetic.hpp"
#include "qhydro/presets.hpp"
#include "qhydro/quantum_potential.hpp"
#include "qhydro/scenarios.hpp"

namespace qhydro {

VerifySuite parse_verify_suite(std::string_view name) {
  if (name == "quick") return VerifySuite::Quick;
  if (name == "full") return VerifySuite::Full;
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

Outcome below(double value, double limit, const std::string& what) {
  return {value <= limit, what + " = " + sci(value) + " (limit " + sci(limit) + ")"};
}

ScalarField smooth_density(const Grid1D& g) {
  return ScalarField::from_function(g, [](double x) { return 1.0 + 0.5 * std::sin(x) + 0.2 * std::cos(3.0 * x); });
}

Outcome q_constant() {
  const Grid1D g(64, 2.0 * kPi);
  return below(bohm_potential(ScalarField(g, 3.7), PhysParams{}).max_abs(), 0.0, "max|Q|");
}

Outcome q_scale() {
  const Grid1D g(128, 2.0 * kPi);
  const ScalarField rho = smooth_density(g);
  const ScalarField q1 = bohm_potential(rho, PhysParams{});
  const ScalarField q2 = bohm_potential(rho * 7.3, PhysParams{});
  return below((q1 - q2).max_abs() / q1.max_abs(), 1e-12, "relative change");
}

Outcome force_forms() {
  const Grid1D g(128, 2.0 * kPi);
  const ScalarField rho = smooth_density(g);
  const PhysParams p;
  const ScalarField a = quantum_force(rho, p, {}, DiffScheme::Spectral, QuantumForceForm::GradientOfPotential);
  const ScalarField b = quantum_force(rho, p, {}, DiffScheme::Spectral, QuantumForceForm::Expanded);
  return below((a - b).max_abs() / a.max_abs(), 1e-8, "relative difference");
}

Outcome bogoliubov_closed_form() {
  const PhysParams p = scenarios::unit_condensate();
  double worst = std::abs(bogoliubov_omega(2.0, p) - 2.0 * std::sqrt(2.0)) / (2.0 * std::sqrt(2.0));
  for (double k = 0.1; k < 20.0; k += 0.7) {
    const double w = bogoliubov_omega(k, p);
    const double rhs = k * k + 0.25 * k * k * k * k;
    worst = std::max(worst, std::abs(w * w - rhs) / rhs);
  }
  return below(worst, 1e-14, "identity error");
}

Outcome helium() {
  const PhysParams he = helium4_params();
  const double ratio = he.hbar / he.mass;
  const bool ok = ratio >= 1.5e-8 && ratio <= 1.7e-8 && std::abs(heisenberg_scale(ratio, 1.0, he) - 1.0) < 1e-12;
  return {ok, "hbar/m = " + sci(ratio) + " m^2/s"};
}

Outcome linear_dispersion() {
  const PhysParams p = scenarios::unit_condensate();
  DispersionOptions opt;
  opt.n_points = 64;
  const long modes[] = {1, 2, 3, 4};
  const double dt = dispersion_time_step(p, 1e-3, modes, opt);
  const auto c = measure_dispersion_periods(DispersionSource::LinearAcoustic, modes, 1e-3, p, 5.0, dt, opt);
  return below(c.max_rel_err(), 1e-4, "max rel_err");
}

Outcome gp_plane_wave() {
  const Grid1D g(64, 2.0 * kPi);
  const PhysParams p;
  const double k = 3.0, dt = 1e-3;
  const WaveFunction wf(ComplexField::from_function(g, [&](double x) {
    return std::polar(1.0 / std::sqrt(g.length()), k * x);
  }));
  const WaveFunction out = gp_step(wf, p, ExternalPotential::none(g), 1.0, dt);
  const std::complex<double> expect = std::polar(1.0, -p.hbar * k * k * dt / (2.0 * p.mass));
  double err = 0.0;
  for (std::size_t i = 0; i < g.n_points(); ++i) err = std::max(err, std::abs(out.psi[i] / wf.psi[i] - expect));
  return below(err, 1e-12, "phase error");
}

Outcome madelung_round_trip() {
  const Grid1D g(128, 2.0 * kPi);
  const PhysParams p;
  const FluidState s(smooth_density(g), ScalarField::from_function(g, [](double x) { return 1.0 + 0.3 * std::cos(x); }));
  const double n_total = integrate(s.rho) / p.mass;
  const FluidState back = madelung_decompose(madelung_compose(s, p, n_total), p, n_total);
  const double err = std::max((back.rho - s.rho).max_abs(), (back.u - s.u).max_abs());
  return below(err, 1e-10, "round-trip error");
}

Outcome hydro_conservation() {
  const Grid1D g(128, 2.0 * kPi);
  HydroSystem sys;
  sys.params = scenarios::unit_condensate();
  const FluidState init = presets::single_mode(g, sys.params, 2, 0.05, ModeShape::Traveling);
  StepControl c;
  c.dt = 0.9 * c.cfl_safety * max_stable_dt(init, sys);
  const SimulationRecord r = run_simulation(init, sys, c, 0.5, 1000);
  const bool ok = r.max_mass_drift <= 1e-8 && r.max_momentum_drift <= 1e-8;
  return {ok, "mass drift " + sci(r.max_mass_drift) + ", momentum drift " + sci(r.max_momentum_drift)};
}

Outcome gp_energy_drift() {
  const Grid1D g(128, 2.0 * kPi);
  const PhysParams p = scenarios::unit_condensate();
  const FluidState s = presets::single_mode(g, p, 1, 0.1, ModeShape::Standing);
  const double n_total = integrate(s.rho) / p.mass;
  WaveFunction wf = madelung_compose(s, p, n_total);
  const ExternalPotential none = ExternalPotential::none(g);
  const double e0 = gp_energy(wf, p, none, n_total);
  GpPropagator prop(g, p, none, n_total, 1e-3);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    prop.step(wf);
    worst = std::max(worst, std::abs(gp_energy(wf, p, none, n_total) - e0) / std::abs(e0));
  }
  return below(worst, 1e-6, "relative energy drift over t = 1");
}

Outcome kinetic_maxwellian() {
  const PhysParams p;
  const PhaseSpaceGrid grid(Grid1D(32, 2.0 * kPi), 32, 7.0);
  PhaseSpaceState s = maxwellian_state(grid, p, 1.0);
  const ExternalPotential none = ExternalPotential::none(grid.x_grid());
  const KineticMoments m = moments(s, p, 1.0);
  const double t_err = (m.temp - ScalarField(grid.x_grid(), 1.0)).max_abs();
  std::vector<PhaseSpaceState> traj{s};
  for (int k = 0; k < 4; ++k) traj.push_back(liouville_step(traj.back(), p, none, 1.0, 0.01));
  const MomentResidualReport r = moment_residuals(traj, p, 1.0, none);
  const double worst = std::max({r.continuity, r.momentum, r.heat});
  return {t_err <= 1e-6 && worst <= 1e-10, "temperature error " + sci(t_err) + ", residual " + sci(worst)};
}

Outcome kinetic_normalization() {
  const PhysParams p;
  const PhaseSpaceGrid grid(Grid1D(64, 2.0 * kPi), 64, 0.6);
  const ExternalPotential none = ExternalPotential::none(grid.x_grid());
  PhaseSpaceState s = cold_beam_state(
      grid, [](double x) { return 1.0 + 0.2 * std::cos(x); }, [](double x) { return 0.1 * std::sin(x); }, 0.05);
  const double m0 = s.total();
  for (int k = 0; k < 1000; ++k) s = liouville_step(s, p, none, 1.0, 2e-3);
  return below(std::abs(s.total() - m0), 1e-8, "normalization drift per 1000 steps");
}

Outcome bogoliubov_full() {
  const PhysParams p = scenarios::unit_condensate();
  const long modes[] = {1, 2, 3, 4, 5, 6, 7, 8};
  const auto r = scenarios::bogoliubov_runs(p, modes, 256, 2.0 * kPi, 1e-3);
  double cross = 0.0;
  for (std::size_t i = 0; i < r.hydro.entries.size(); ++i) {
    const auto& h = r.hydro.entries[i];
    cross = std::max(cross, std::abs(h.omega_measured - r.gp.entries[i].omega_measured) / h.omega_analytic);
  }
  const bool ok = r.hydro.max_rel_err() <= 1e-2 && r.gp.max_rel_err() <= 1e-2 && cross <= 5e-3;
  return {ok, "hydro " + sci(r.hydro.max_rel_err()) + ", gp " + sci(r.gp.max_rel_err()) + ", cross " + sci(cross)};
}

Outcome equivalence() {
  const auto r = scenarios::oracle_equivalence_run(scenarios::unit_condensate(), 1.0);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r.rho_gp.size(); ++i) {
    num += (r.rho_hydro[i] - r.rho_gp[i]) * (r.rho_hydro[i] - r.rho_gp[i]);
    den += r.rho_gp[i] * r.rho_gp[i];
  }
  return below(std::sqrt(num / den), 1e-3, "relative L2 discrepancy");
}

Outcome stationarity() {
  PhysParams p;
  const Grid1D g(128, 2.0 * kPi);
  HydroSystem sys;
  sys.params = p;
  const double center = kPi, beta = 2.0;
  sys.vext = ExternalPotential::periodic_trap(g, p, beta, center);
  const FluidState trap = presets::periodic_trap_ground_state(g, p, beta, center);
  const double dt = 0.9 * 0.5 * max_stable_dt(trap, sys);
  const auto h = scenarios::hydro_drift(trap, sys, 1.0, dt);
  const double n_total = integrate(trap.rho) / p.mass;
  const auto w = scenarios::gp_drift(madelung_compose(trap, p, n_total), p, *sys.vext, n_total, 1.0, 2e-5);
  const double worst = std::max({h.density, h.velocity, w.density, w.velocity});
  return below(worst, 1e-8, "drift per unit time");
}

Outcome kinetic_refinement() {
  const auto coarse = scenarios::cold_beam_residuals(128, 64, 3.6e-4, 0.2);
  const auto fine = scenarios::cold_beam_residuals(256, 128, 1.8e-4, 0.2);
  const double oc = std::log2(coarse.continuity / fine.continuity);
  const double om = std::log2(coarse.momentum / fine.momentum);
  return {oc >= 1.5 && om >= 1.5, "orders: continuity " + sci(oc) + ", momentum " + sci(om)};
}

}  // namespace

std::vector<CheckResult> run_verification(VerifySuite suite, std::ostream* log) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"quantum potential of constant density is zero", q_constant},
      {"quantum potential is scale invariant", q_scale},
      {"quantum force forms agree", force_forms},
      {"Bogoliubov closed form", bogoliubov_closed_form},
      {"helium-4 hbar/m scale", helium},
      {"linear acoustic dispersion", linear_dispersion},
      {"GP plane-wave phase", gp_plane_wave},
      {"Madelung round trip", madelung_round_trip},
      {"hydro mass and momentum conservation", hydro_conservation},
      {"GP energy conservation", gp_energy_drift},
      {"kinetic uniform Maxwellian", kinetic_maxwellian},
      {"kinetic normalization", kinetic_normalization},
  };
  if (suite == VerifySuite::Full) {
    checks.emplace_back("Bogoliubov spectrum, hydro and GP engines", bogoliubov_full);
    checks.emplace_back("GP and hydro engines agree at t = 1", equivalence);
    checks.emplace_back("trap ground state is stationary", stationarity);
    checks.emplace_back("kinetic moment residual refinement", kinetic_refinement);
  }
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    try {
      const Outcome o = fn();
      r.passed = o.ok;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) {
      *log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " [" << sci(r.seconds) << " s]"
           << std::endl;
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qhydro
