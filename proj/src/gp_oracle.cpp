#include "qhydro/gp_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhydro/diff.hpp"
#include "qhydro/error.hpp"
#include "qhydro/spectral.hpp"

namespace qhydro {

namespace {

void require_quantum(const PhysParams& p, const char* what) {
  p.validate();
  if (!(p.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " requires hbar > 0");
}

double squared_wavenumber(std::size_t j, std::size_t n, double length) {
  const double k = 2.0 * std::numbers::pi * static_cast<double>(spectral::frequency_index(j, n)) / length;
  return k * k;
}

}  // namespace

WaveFunction::WaveFunction(ComplexField psi_, double norm_target_, double time_)
    : psi(std::move(psi_)), norm_target(norm_target_), time(time_) {
  if (!(norm_target > 0.0)) throw Error(ErrorKind::InvalidArgument, "norm_target must be > 0");
}

double WaveFunction::norm() const {
  double acc = 0.0;
  for (const auto& z : psi.values()) acc += std::norm(z);
  return acc * grid().spacing();
}

GpPropagator::GpPropagator(const Grid1D& grid, const PhysParams& params,
                           const ExternalPotential& vext, double n_total, double dt)
    : params_(params),
      v_(vext.values().data()),
      n_total_(n_total),
      dt_(dt),
      kinetic_phase_(grid.n_points()),
      hat_(grid.n_points()) {
  require_quantum(params, "the GP propagator");
  require_same_grid(grid, vext.values().grid(), "GP external potential");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(n_total > 0.0)) throw Error(ErrorKind::InvalidArgument, "n_total must be > 0");
  const std::size_t n = grid.n_points();
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = -params.hbar * squared_wavenumber(j, n, grid.length()) * dt / (2.0 * params.mass);
    kinetic_phase_[j] = std::polar(1.0, phase);
  }
}

void GpPropagator::potential_half_step(std::vector<std::complex<double>>& psi) const {
  const double G = params_.gp_coupling();
  const double mN = params_.mass * n_total_;
  const double c = 0.5 * dt_ / params_.hbar;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double rho = mN * std::norm(psi[i]);
    psi[i] *= std::polar(1.0, -(v_[i] + G * rho) * c);
  }
}

void GpPropagator::step(WaveFunction& wf) {
  auto& ws = spectral::workspace(wf.psi.size());
  std::vector<std::complex<double>>& psi = hat_;
  psi.assign(wf.psi.values().begin(), wf.psi.values().end());
  potential_half_step(psi);
  ws.forward(psi, psi);
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= kinetic_phase_[j];
  ws.inverse(psi, psi);
  potential_half_step(psi);
  std::copy(psi.begin(), psi.end(), wf.psi.values().begin());
  wf.time += dt_;
  const double drift = std::abs(wf.norm() - wf.norm_target) / wf.norm_target;
  if (!(drift <= 1e-10)) {
    throw Error(ErrorKind::NormDrift, "wavefunction norm drifted by " + std::to_string(drift));
  }
}

WaveFunction gp_step(const WaveFunction& wf, const PhysParams& params,
                     const ExternalPotential& vext, double n_total, double dt) {
  require_finite(wf.psi, "wavefunction");
  GpPropagator prop(wf.grid(), params, vext, n_total, dt);
  WaveFunction out = wf;
  prop.step(out);
  return out;
}

double gp_energy(const WaveFunction& wf, const PhysParams& params, const ExternalPotential& vext,
                 double n_total) {
  params.validate();
  const std::size_t n = wf.psi.size();
  const Grid1D& g = wf.grid();
  auto& ws = spectral::workspace(n);
  std::vector<std::complex<double>> hat(n);
  ws.forward(wf.psi.values(), hat);
  double kinetic = 0.0;
  for (std::size_t j = 0; j < n; ++j) kinetic += squared_wavenumber(j, n, g.length()) * std::norm(hat[j]);
  kinetic *= g.spacing() / static_cast<double>(n);
  kinetic *= params.hbar * params.hbar / (2.0 * params.mass);

  const double g_int = 4.0 * std::numbers::pi * params.hbar * params.hbar * params.scatter_len / params.mass;
  double potential = 0.0;
  double interaction = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(wf.psi[i]);
    potential += vext.values()[i] * a2;
    interaction += a2 * a2;
  }
  potential *= g.spacing();
  interaction *= 0.5 * g_int * n_total * g.spacing();
  return kinetic + potential + interaction;
}

FluidState madelung_decompose(const WaveFunction& wf, const PhysParams& params, double n_total,
                              const VacuumPolicy& policy) {
  require_quantum(params, "the Madelung transform");
  require_finite(wf.psi, "wavefunction");
  policy.validate();
  const Grid1D& g = wf.grid();
  const double mN = params.mass * n_total;
  ScalarField rho = wf.psi.modulus_squared() * mN;
  const double floor_psi = policy.floor_for(rho) / mN;
  if (floor_psi <= 0.0 && rho.min() <= 0.0) {
    throw Error(ErrorKind::DivisionNearVacuum, "wavefunction has a node and the vacuum floor is zero");
  }
  const ComplexField dpsi = gradient(wf.psi);
  ScalarField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double current = std::imag(std::conj(wf.psi[i]) * dpsi[i]);
    u[i] = params.hbar / params.mass * current / std::max(std::norm(wf.psi[i]), floor_psi);
  }
  return FluidState(std::move(rho), std::move(u), std::nullopt, wf.time);
}

double phase_winding(const ScalarField& u, const PhysParams& params) {
  return integrate(u) * params.mass / params.hbar / (2.0 * std::numbers::pi);
}

WaveFunction madelung_compose(const FluidState& state, const PhysParams& params, double n_total) {
  require_quantum(params, "the Madelung transform");
  require_finite(state.rho, "density");
  require_finite(state.u, "velocity");
  if (!(n_total > 0.0)) throw Error(ErrorKind::InvalidArgument, "n_total must be > 0");
  if (state.rho.min() < 0.0) throw Error(ErrorKind::NegativeDensity, "density must be >= 0");

  const Grid1D& g = state.grid();
  const double w = phase_winding(state.u, params);
  const double winding = std::round(w);
  if (std::abs(w - winding) > 1e-6) {
    throw Error(ErrorKind::PhaseWindingMismatch,
                "circulation m/hbar * int u dx = 2 pi * " + std::to_string(w) + " is not quantized");
  }
  const ScalarField periodic_phase = periodic_antiderivative(state.u * (params.mass / params.hbar));
  const double mN = params.mass * n_total;
  ComplexField psi(g);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double phase = 2.0 * std::numbers::pi * winding * g.x(i) / g.length() + periodic_phase[i];
    psi[i] = std::polar(std::sqrt(state.rho[i] / mN), phase);
  }
  WaveFunction wf(std::move(psi), 1.0, state.time);
  wf.norm_target = wf.norm();
  return wf;
}

}  // namespace qhydro
