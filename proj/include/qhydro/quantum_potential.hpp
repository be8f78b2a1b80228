#pragma once

#include <span>
#include <string_view>

#include "qhydro/diff.hpp"
#include "qhydro/field.hpp"
#include "qhydro/params.hpp"

namespace qhydro {

/// How the quantum acceleration -(1/m) dQ/dx is evaluated.
enum class QuantumForceForm {
  /// Build the field Q, then differentiate it.
  GradientOfPotential,
  /// Combine derivatives of the amplitude A = sqrt(rho) pointwise:
  /// (hbar^2 / 2m^2) (A'''/A - A'' A' / A^2). Errors in near-vacuum tails stay local.
  Expanded,
};

std::string_view to_string(QuantumForceForm form);
QuantumForceForm parse_quantum_force_form(std::string_view name);

/// Bohm potential Q = -(hbar^2 / 2m) lap(A) / A with A = sqrt(max(rho, floor)).
///
/// Q depends on rho only through sqrt(rho)'s relative curvature, so any
/// constant rescaling of rho (mass density or number density) gives the same Q.
/// Throws NegativeDensity if any rho < 0, DivisionNearVacuum if the floor is
/// zero and min(rho) <= 0, NonFiniteInput on NaN/Inf.
ScalarField bohm_potential(const ScalarField& rho, const PhysParams& params,
                           const VacuumPolicy& policy = {},
                           DiffScheme scheme = DiffScheme::Spectral);

/// Quantum acceleration -(1/m) dQ/dx, i.e. the last term of the quantum Euler equation.
ScalarField quantum_force(const ScalarField& rho, const PhysParams& params,
                          const VacuumPolicy& policy = {},
                          DiffScheme scheme = DiffScheme::Spectral,
                          QuantumForceForm form = QuantumForceForm::GradientOfPotential);

namespace kernels {

/// Unchecked quantum acceleration with an explicit absolute density floor.
/// Shared by the hydro and kinetic steppers. Writes zeros when hbar == 0.
void quantum_acceleration(std::span<const double> rho, double floor, const PhysParams& params,
                          DiffScheme scheme, QuantumForceForm form, double length,
                          std::span<double> out);

}  // namespace kernels

}  // namespace qhydro
