#include "qhydro/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhydro/error.hpp"

namespace qhydro {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, std::string(field) + " must be " + rule);
}

}  // namespace

void PhysParams::validate() const {
  require(std::isfinite(hbar) && hbar >= 0.0, "hbar", "finite and >= 0");
  require(std::isfinite(mass) && mass > 0.0, "mass", "finite and > 0");
  require(std::isfinite(boltzmann) && boltzmann > 0.0, "boltzmann", "finite and > 0");
  require(std::isfinite(scatter_len) && scatter_len >= 0.0, "scatter_len", "finite and >= 0");
  require(std::isfinite(rho0) && rho0 > 0.0, "rho0", "finite and > 0");
}

double PhysParams::gp_coupling() const noexcept {
  return 4.0 * std::numbers::pi * hbar * hbar * scatter_len / (mass * mass);
}

double PhysParams::sound_speed_squared(double rho) const noexcept {
  return gp_coupling() * rho / mass;
}

void VacuumPolicy::validate() const {
  require(std::isfinite(epsilon) && epsilon >= 0.0, "vacuum epsilon", "finite and >= 0");
}

double VacuumPolicy::floor_for(const ScalarField& rho) const {
  return relative ? epsilon * rho.max() : epsilon;
}

}  // namespace qhydro
