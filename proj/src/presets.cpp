#include "qhydro/presets.hpp"

#include <cmath>
#include <numbers>

#include "qhydro/error.hpp"

namespace qhydro::presets {

namespace {

std::optional<ScalarField> temperature_field(const Grid1D& grid, std::optional<double> t) {
  if (!t) return std::nullopt;
  if (!(*t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "temperature must be >= 0");
  return ScalarField(grid, *t);
}

// Rescales rho to mean density rho0.
void set_mean(ScalarField& rho, double rho0) {
  const double mean = integrate(rho) / rho.grid().length();
  rho *= rho0 / mean;
}

}  // namespace

FluidState uniform(const Grid1D& grid, const PhysParams& params, std::optional<double> temperature) {
  params.validate();
  return FluidState(ScalarField(grid, params.rho0), ScalarField(grid),
                    temperature_field(grid, temperature));
}

FluidState single_mode(const Grid1D& grid, const PhysParams& params, long mode, double amplitude,
                       ModeShape shape, std::optional<double> temperature) {
  params.validate();
  if (mode < 1 || static_cast<std::size_t>(mode) >= grid.n_points() / 2) {
    throw Error(ErrorKind::InvalidArgument, "mode must lie in [1, n/2)");
  }
  if (!(std::abs(amplitude) < params.rho0)) {
    throw Error(ErrorKind::InvalidArgument, "amplitude must be smaller than rho0");
  }
  const double k = grid.wavenumber(static_cast<double>(mode));
  const double u_amp =
      shape == ModeShape::Traveling ? amplitude * bogoliubov_omega(k, params) / (params.rho0 * k) : 0.0;
  return FluidState(
      ScalarField::from_function(grid, [&](double x) { return params.rho0 + amplitude * std::cos(k * x); }),
      ScalarField::from_function(grid, [&](double x) { return u_amp * std::cos(k * x); }),
      temperature_field(grid, temperature));
}

FluidState gaussian(const Grid1D& grid, const PhysParams& params, double center, double sigma,
                    double k0) {
  params.validate();
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be > 0");
  const double L = grid.length();
  ScalarField rho = ScalarField::from_function(grid, [&](double x) {
    double amp = 0.0;
    for (int j = -2; j <= 2; ++j) {
      const double d = x - center + j * L;
      amp += std::exp(-d * d / (4.0 * sigma * sigma));
    }
    return amp * amp;
  });
  set_mean(rho, params.rho0);
  const double u0 = params.mass > 0.0 ? params.hbar * k0 / params.mass : 0.0;
  return FluidState(std::move(rho), ScalarField(grid, u0));
}

FluidState periodic_trap_ground_state(const Grid1D& grid, const PhysParams& params, double beta,
                                      double center) {
  params.validate();
  const double kappa = 2.0 * std::numbers::pi / grid.length();
  ScalarField rho = ScalarField::from_function(
      grid, [&](double x) { return std::exp(2.0 * beta * (std::cos(kappa * (x - center)) - 1.0)); });
  set_mean(rho, params.rho0);
  return FluidState(std::move(rho), ScalarField(grid));
}

}  // namespace qhydro::presets
