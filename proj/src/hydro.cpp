#include "qhydro/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "qhydro/error.hpp"

namespace qhydro {

FluidState::FluidState(ScalarField rho_, ScalarField u_, std::optional<ScalarField> temp_,
                       double time_)
    : rho(std::move(rho_)), u(std::move(u_)), temp(std::move(temp_)), time(time_) {
  require_same_grid(rho.grid(), u.grid(), "fluid state velocity");
  if (temp) require_same_grid(rho.grid(), temp->grid(), "fluid state temperature");
}

double FluidState::mass() const { return integrate(rho); }

double FluidState::momentum() const { return integrate(hadamard(rho, u)); }

std::string_view closure_name(const ClosureModel& closure) {
  struct Visitor {
    std::string_view operator()(const Pressureless&) const { return "pressureless"; }
    std::string_view operator()(const Isothermal&) const { return "isothermal"; }
    std::string_view operator()(const IdealGasHeat&) const { return "ideal_gas_heat"; }
  };
  return std::visit(Visitor{}, closure);
}

ExternalPotential::ExternalPotential(ScalarField values) : values_(std::move(values)) {
  require_finite(values_, "external potential");
}

ExternalPotential::ExternalPotential(ScalarField values, ScalarField gradient)
    : values_(std::move(values)), gradient_(std::move(gradient)) {
  require_finite(values_, "external potential");
  require_finite(*gradient_, "external potential gradient");
  require_same_grid(values_.grid(), gradient_->grid(), "external potential gradient");
}

ExternalPotential ExternalPotential::none(const Grid1D& grid) {
  ExternalPotential v{ScalarField(grid), ScalarField(grid)};
  v.zero_ = true;
  return v;
}

ExternalPotential ExternalPotential::harmonic(const Grid1D& grid, const PhysParams& params,
                                              double omega, double center) {
  const double k = params.mass * omega * omega;
  return ExternalPotential(
      ScalarField::from_function(grid, [&](double x) { return 0.5 * k * (x - center) * (x - center); }),
      ScalarField::from_function(grid, [&](double x) { return k * (x - center); }));
}

ExternalPotential ExternalPotential::periodic_trap(const Grid1D& grid, const PhysParams& params,
                                                   double beta, double center) {
  const double kappa = 2.0 * std::numbers::pi / grid.length();
  const double scale = params.hbar * params.hbar * kappa * kappa / (2.0 * params.mass);
  auto v = [&](double x) {
    const double s = std::sin(kappa * (x - center));
    const double c = std::cos(kappa * (x - center));
    return scale * (beta * beta * s * s + beta * (1.0 - c));
  };
  auto dv = [&](double x) {
    const double s = std::sin(kappa * (x - center));
    const double c = std::cos(kappa * (x - center));
    return scale * kappa * (2.0 * beta * beta * s * c + beta * s);
  };
  return ExternalPotential(ScalarField::from_function(grid, v), ScalarField::from_function(grid, dv));
}

ScalarField ExternalPotential::gradient(DiffScheme scheme) const {
  if (gradient_) return *gradient_;
  return qhydro::gradient(values_, scheme);
}

namespace {

struct Workspace {
  std::vector<double> flux, dflux, du, qacc, dp, tmp;
  void resize(std::size_t n) {
    for (auto* v : {&flux, &dflux, &du, &qacc, &dp, &tmp}) v->resize(n);
  }
};

Workspace& workspace(std::size_t n) {
  thread_local Workspace w;
  w.resize(n);
  return w;
}

double sound_speed_bound(const FluidState& s, const HydroSystem& sys) {
  const PhysParams& p = sys.params;
  double c2 = 0.0;
  if (sys.model == FluidModel::GrossPitaevskii) {
    c2 += p.sound_speed_squared(s.rho.max());
  } else if (const auto* iso = std::get_if<Isothermal>(&sys.closure)) {
    c2 += p.boltzmann * iso->temperature / p.mass;
  } else if (std::holds_alternative<IdealGasHeat>(sys.closure) && s.temp) {
    // one translational degree of freedom: gamma = 3
    c2 += 3.0 * p.boltzmann * s.temp->max() / p.mass;
  }
  return std::sqrt(std::max(c2, 0.0));
}

// Shared right-hand side. `strict` enables the public-API precondition checks;
// RK stages run lenient so that round-off dips below zero in vacuum do not abort.
FluidDerivative evaluate(const FluidState& s, const HydroSystem& sys, bool strict) {
  const PhysParams& p = sys.params;
  const Grid1D& g = s.grid();
  const std::size_t n = g.n_points();
  const double L = g.length();
  if (strict) {
    p.validate();
    require_finite(s.rho, "density");
    require_finite(s.u, "velocity");
    if (s.rho.min() < 0.0) {
      throw Error(ErrorKind::NegativeDensity, "density has negative value " + std::to_string(s.rho.min()));
    }
  }
  const bool perfect = sys.model == FluidModel::Perfect;
  const bool heat = perfect && std::holds_alternative<IdealGasHeat>(sys.closure);
  if (heat && !s.temp) {
    throw Error(ErrorKind::ClosureMismatch, "ideal_gas_heat closure requires a temperature field");
  }
  if (strict && s.temp && s.temp->min() < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "temperature must be >= 0");
  }

  Workspace& w = workspace(n);
  const auto rho = s.rho.values();
  const auto u = s.u.values();
  const double floor = sys.vacuum.floor_for(s.rho);
  const double rho_floor = floor > 0.0 ? floor : std::numeric_limits<double>::min();

  FluidDerivative d{ScalarField(g), ScalarField(g), std::nullopt};

  // continuity: d rho/dt = -d(rho u)/dx
  for (std::size_t i = 0; i < n; ++i) w.flux[i] = rho[i] * u[i];
  kernels::derivative(w.flux, w.dflux, 1, sys.scheme, L);
  for (std::size_t i = 0; i < n; ++i) d.drho[i] = -w.dflux[i];

  // momentum: du/dt = -u du/dx - (1/m) dV/dx + quantum + (pressure or GP term)
  kernels::derivative(u, w.du, 1, sys.scheme, L);
  kernels::quantum_acceleration(rho, floor, p, sys.scheme, sys.force_form, L, w.qacc);
  for (std::size_t i = 0; i < n; ++i) d.du[i] = -u[i] * w.du[i] + w.qacc[i];

  if (sys.vext && !sys.vext->is_zero()) {
    const ScalarField dv = sys.vext->gradient(sys.scheme);
    for (std::size_t i = 0; i < n; ++i) d.du[i] -= dv[i] / p.mass;
  }

  if (!perfect) {
    const double G = p.gp_coupling();
    if (G != 0.0) {
      kernels::derivative(rho, w.dp, 1, sys.scheme, L);
      for (std::size_t i = 0; i < n; ++i) d.du[i] -= G / p.mass * w.dp[i];
    }
    return d;
  }

  if (const auto* iso = std::get_if<Isothermal>(&sys.closure)) {
    // p = rho kappa T0 / m
    const double c2 = p.boltzmann * iso->temperature / p.mass;
    if (c2 != 0.0) {
      kernels::derivative(rho, w.dp, 1, sys.scheme, L);
      for (std::size_t i = 0; i < n; ++i) d.du[i] -= c2 * w.dp[i] / std::max(rho[i], rho_floor);
    }
  } else if (heat) {
    const auto T = s.temp->values();
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = rho[i] * p.boltzmann * T[i] / p.mass;
    kernels::derivative(w.tmp, w.dp, 1, sys.scheme, L);
    for (std::size_t i = 0; i < n; ++i) d.du[i] -= w.dp[i] / std::max(rho[i], rho_floor);
    // dT/dt = -d(T u)/dx - (2m / 3 rho kappa) dq/dx with q = 0
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = T[i] * u[i];
    kernels::derivative(w.tmp, w.dp, 1, sys.scheme, L);
    ScalarField dT(g);
    for (std::size_t i = 0; i < n; ++i) dT[i] = -w.dp[i];
    d.dtemp = std::move(dT);
  }
  if (s.temp && !d.dtemp) d.dtemp = ScalarField(g);
  return d;
}

FluidState axpy(const FluidState& s, double h, const FluidDerivative& d) {
  FluidState out = s;
  auto r = out.rho.values();
  auto u = out.u.values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += h * d.drho[i];
    u[i] += h * d.du[i];
  }
  if (out.temp && d.dtemp) {
    auto t = out.temp->values();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += h * (*d.dtemp)[i];
  }
  return out;
}

void filter_derivative(FluidDerivative& d, const StepControl& c) {
  kernels::filter(d.drho.values(), c.filter_strength, c.filter_order);
  kernels::filter(d.du.values(), c.filter_strength, c.filter_order);
  if (d.dtemp) kernels::filter(d.dtemp->values(), c.filter_strength, c.filter_order);
}

void check_bounded(const ScalarField& f, const char* what) {
  for (double v : f.values()) {
    if (!std::isfinite(v) || std::abs(v) > 1e12) {
      throw Error(ErrorKind::BlowUp, std::string(what) + " exceeded 1e12 or became non-finite");
    }
  }
}

void clamp_nonnegative(ScalarField& f, ErrorKind kind, const char* what) {
  const double scale = std::max(f.max_abs(), 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double& v = f[i];
    if (v < 0.0) {
      if (v < -1e-12 * scale) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " dipped to %.3e at node %zu", v, i);
        throw Error(kind, what + std::string(buf));
      }
      v = 0.0;
    }
  }
}

}  // namespace

FluidDerivative rhs_perfect(const FluidState& state, const HydroSystem& system) {
  HydroSystem sys = system;
  sys.model = FluidModel::Perfect;
  return evaluate(state, sys, true);
}

FluidDerivative rhs_gp(const FluidState& state, const HydroSystem& system) {
  HydroSystem sys = system;
  sys.model = FluidModel::GrossPitaevskii;
  return evaluate(state, sys, true);
}

FluidDerivative rhs(const FluidState& state, const HydroSystem& system) {
  return evaluate(state, system, true);
}

double max_stable_dt(const FluidState& state, const HydroSystem& system) {
  const double dx = state.grid().spacing();
  const double speed = state.u.max_abs() + sound_speed_bound(state, system);
  double dt = speed > 0.0 ? dx / speed : std::numeric_limits<double>::infinity();
  if (system.params.hbar > 0.0) {
    dt = std::min(dt, system.params.mass * dx * dx / (std::numbers::pi * system.params.hbar));
  }
  return dt;
}

FluidState step(const FluidState& state, const HydroSystem& system, const StepControl& control) {
  const double dt = control.dt;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(control.cfl_safety > 0.0 && control.cfl_safety <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "cfl_safety must lie in (0, 1]");
  }
  const double limit = control.cfl_safety * max_stable_dt(state, system);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::CflViolation,
                "dt = " + std::to_string(dt) + " exceeds the stable limit " + std::to_string(limit));
  }
  const bool filter = control.filter && system.scheme == DiffScheme::Spectral;
  auto stage = [&](const FluidState& s) {
    FluidDerivative d = evaluate(s, system, false);
    if (filter) filter_derivative(d, control);
    return d;
  };

  const FluidDerivative k1 = stage(state);
  const FluidDerivative k2 = stage(axpy(state, 0.5 * dt, k1));
  const FluidDerivative k3 = stage(axpy(state, 0.5 * dt, k2));
  const FluidDerivative k4 = stage(axpy(state, dt, k3));

  FluidState out = state;
  const std::size_t n = state.grid().n_points();
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.rho[i] += w * (k1.drho[i] + 2.0 * k2.drho[i] + 2.0 * k3.drho[i] + k4.drho[i]);
    out.u[i] += w * (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
  }
  if (out.temp && k1.dtemp) {
    for (std::size_t i = 0; i < n; ++i) {
      (*out.temp)[i] +=
          w * ((*k1.dtemp)[i] + 2.0 * (*k2.dtemp)[i] + 2.0 * (*k3.dtemp)[i] + (*k4.dtemp)[i]);
    }
  }
  out.time = state.time + dt;

  check_bounded(out.rho, "density");
  check_bounded(out.u, "velocity");
  if (out.temp) check_bounded(*out.temp, "temperature");
  clamp_nonnegative(out.rho, ErrorKind::NegativeDensity, "density");
  if (out.temp) clamp_nonnegative(*out.temp, ErrorKind::InvalidArgument, "temperature");
  return out;
}

SimulationRecord run_simulation(const FluidState& initial, const HydroSystem& system,
                                const StepControl& control, double t_end,
                                std::size_t snapshot_every, const StepObserver& observer) {
  if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be >= 0");
  if (snapshot_every == 0) throw Error(ErrorKind::InvalidArgument, "snapshot_every must be >= 1");

  SimulationRecord rec;
  const double m0 = initial.mass();
  const double p0 = initial.momentum();
  auto l1_momentum = [](const FluidState& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.rho.size(); ++i) acc += std::abs(s.rho[i] * s.u[i]);
    return acc * s.grid().spacing();
  };
  double p_scale = l1_momentum(initial);
  double p_drift = 0.0;

  auto record = [&](const FluidState& s) {
    rec.snapshots.push_back(s);
    rec.series_time.push_back(s.time);
    rec.mass.push_back(s.mass());
    rec.momentum.push_back(s.momentum());
  };
  record(initial);

  const double t0 = initial.time;
  const auto n_steps =
      static_cast<std::size_t>(std::ceil(t_end / control.dt - 1e-9));
  FluidState s = initial;
  StepControl c = control;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double target = k == n_steps ? t0 + t_end : t0 + static_cast<double>(k) * control.dt;
    c.dt = target - s.time;
    if (c.dt <= 0.0) break;
    s = step(s, system, c);
    s.time = target;
    ++rec.steps;
    if (m0 != 0.0) rec.max_mass_drift = std::max(rec.max_mass_drift, std::abs(s.mass() - m0) / std::abs(m0));
    p_scale = std::max(p_scale, l1_momentum(s));
    p_drift = std::max(p_drift, std::abs(s.momentum() - p0));
    if (observer) observer(s, k);
    if (k % snapshot_every == 0 || k == n_steps) record(s);
  }
  rec.max_momentum_drift = p_scale > 0.0 ? p_drift / p_scale : 0.0;
  return rec;
}

}  // namespace qhydro
