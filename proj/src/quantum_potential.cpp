#include "qhydro/quantum_potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qhydro/error.hpp"

namespace qhydro {

std::string_view to_string(QuantumForceForm form) {
  return form == QuantumForceForm::Expanded ? "expanded" : "gradient";
}

QuantumForceForm parse_quantum_force_form(std::string_view name) {
  if (name == "gradient") return QuantumForceForm::GradientOfPotential;
  if (name == "expanded") return QuantumForceForm::Expanded;
  throw Error(ErrorKind::InvalidArgument, "unknown quantum force form '" + std::string(name) + "'");
}

namespace {

double checked_floor(const ScalarField& rho, const VacuumPolicy& policy) {
  require_finite(rho, "density");
  policy.validate();
  const double lo = rho.min();
  if (lo < 0.0) {
    throw Error(ErrorKind::NegativeDensity, "density has negative value " + std::to_string(lo));
  }
  const double floor = policy.floor_for(rho);
  if (floor <= 0.0 && lo <= 0.0) {
    throw Error(ErrorKind::DivisionNearVacuum,
                "density reaches zero and the vacuum floor is zero");
  }
  return floor;
}

struct Scratch {
  std::vector<double> amp, d1, d2, d3, q;
  void resize(std::size_t n) {
    amp.resize(n);
    d1.resize(n);
    d2.resize(n);
    d3.resize(n);
    q.resize(n);
  }
};

Scratch& scratch(std::size_t n) {
  thread_local Scratch s;
  s.resize(n);
  return s;
}

void amplitude(std::span<const double> rho, double floor, std::span<double> amp) {
  for (std::size_t i = 0; i < rho.size(); ++i) amp[i] = std::sqrt(std::max(rho[i], floor));
}

void potential_from_amplitude(std::span<const double> amp, std::span<const double> lap,
                              const PhysParams& p, std::span<double> out) {
  const double c = -p.hbar * p.hbar / (2.0 * p.mass);
  for (std::size_t i = 0; i < amp.size(); ++i) out[i] = c * lap[i] / amp[i];
}

}  // namespace

namespace kernels {

void quantum_acceleration(std::span<const double> rho, double floor, const PhysParams& params,
                          DiffScheme scheme, QuantumForceForm form, double length,
                          std::span<double> out) {
  const std::size_t n = rho.size();
  if (params.hbar == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  Scratch& s = scratch(n);
  amplitude(rho, floor, s.amp);
  derivative(s.amp, s.d2, 2, scheme, length);
  if (form == QuantumForceForm::GradientOfPotential) {
    potential_from_amplitude(s.amp, s.d2, params, s.q);
    derivative(s.q, out, 1, scheme, length);
    const double inv_m = 1.0 / params.mass;
    for (std::size_t i = 0; i < n; ++i) out[i] = -inv_m * out[i];
    return;
  }
  derivative(s.amp, s.d1, 1, scheme, length);
  derivative(s.amp, s.d3, 3, scheme, length);
  const double c = params.hbar * params.hbar / (2.0 * params.mass * params.mass);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = s.amp[i];
    out[i] = c * (s.d3[i] / a - s.d2[i] * s.d1[i] / (a * a));
  }
}

}  // namespace kernels

ScalarField bohm_potential(const ScalarField& rho, const PhysParams& params,
                           const VacuumPolicy& policy, DiffScheme scheme) {
  params.validate();
  const double floor = checked_floor(rho, policy);
  const std::size_t n = rho.size();
  ScalarField out(rho.grid());
  if (params.hbar == 0.0) return out;
  Scratch& s = scratch(n);
  amplitude(rho.values(), floor, s.amp);
  kernels::derivative(s.amp, s.d2, 2, scheme, rho.grid().length());
  potential_from_amplitude(s.amp, s.d2, params, out.values());
  return out;
}

ScalarField quantum_force(const ScalarField& rho, const PhysParams& params,
                          const VacuumPolicy& policy, DiffScheme scheme, QuantumForceForm form) {
  params.validate();
  const double floor = checked_floor(rho, policy);
  ScalarField out(rho.grid());
  kernels::quantum_acceleration(rho.values(), floor, params, scheme, form, rho.grid().length(),
                                out.values());
  return out;
}

}  // namespace qhydro
