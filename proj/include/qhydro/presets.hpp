#pragma once

#include <optional>

#include "qhydro/acoustics.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/params.hpp"

namespace qhydro::presets {

/// rho = rho0, u = 0, temp = T0 when given.
FluidState uniform(const Grid1D& grid, const PhysParams& params,
                   std::optional<double> temperature = std::nullopt);

/// rho = rho0 + amplitude cos(k_j x). Traveling modes carry the right-moving
/// eigenmode velocity u = amplitude * omega(k) / (rho0 k) cos(k_j x); standing modes start at rest.
FluidState single_mode(const Grid1D& grid, const PhysParams& params, long mode, double amplitude,
                       ModeShape shape, std::optional<double> temperature = std::nullopt);

/// Periodized Gaussian packet with mean density rho0:
/// rho proportional to (sum_j exp(-(x - center + jL)^2 / (4 sigma^2)))^2, u = hbar k0 / m.
FluidState gaussian(const Grid1D& grid, const PhysParams& params, double center, double sigma,
                    double k0);

/// Ground state of ExternalPotential::periodic_trap: rho proportional to
/// exp(2 beta cos(2 pi (x - center) / L)), mean density rho0, u = 0.
FluidState periodic_trap_ground_state(const Grid1D& grid, const PhysParams& params, double beta,
                                      double center);

}  // namespace qhydro::presets
