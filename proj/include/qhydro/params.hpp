#pragma once

#include "qhydro/field.hpp"

namespace qhydro {

/// Physical constants. Defaults are the nondimensional units hbar = m = rho0 = 1.
struct PhysParams {
  double hbar = 1.0;
  double mass = 1.0;
  double boltzmann = 1.0;
  double scatter_len = 0.0;  ///< boson-boson scattering length a
  double rho0 = 1.0;         ///< background mass density

  /// Throws InvalidArgument naming the offending field. hbar = 0 is accepted
  /// as the classical limit; scatter_len may be 0.
  void validate() const;

  /// Coefficient G of the mean-field potential V_GP = G * rho, G = 4 pi hbar^2 a / m^2.
  double gp_coupling() const noexcept;
  /// Square of the interaction sound speed at density rho: G * rho / m.
  double sound_speed_squared(double rho) const noexcept;
};

/// Density floor applied before taking sqrt(rho) in the quantum potential.
struct VacuumPolicy {
  double epsilon = 1e-12;
  /// When set, the floor is epsilon * max(rho) rather than epsilon itself.
  bool relative = true;

  static VacuumPolicy absolute(double eps) { return {eps, false}; }
  static VacuumPolicy relative_to_max(double fraction) { return {fraction, true}; }

  void validate() const;
  double floor_for(const ScalarField& rho) const;
};

}  // namespace qhydro
