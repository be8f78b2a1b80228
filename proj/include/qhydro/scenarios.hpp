#pragma once

#include <span>
#include <vector>

#include "qhydro/acoustics.hpp"
#include "qhydro/gp_oracle.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/kinetic.hpp"

// Reference experiments shared by `qhydro verify` and the test suites. Each
// returns raw measurements; judging them is left to the caller.
namespace qhydro::scenarios {

/// hbar = m = rho0 = 1 with a = 1 / (4 pi), so that c_s = 1.
PhysParams unit_condensate();

struct DispersionPair {
  DispersionCurve hydro;
  DispersionCurve gp;
};

/// Traveling single-mode runs of the nonlinear hydro engine and the GP wavefunction
/// engine on the same grid, same dt, five periods per mode.
DispersionPair bogoliubov_runs(const PhysParams& params, std::span<const long> modes,
                               std::size_t n_points, double length, double amplitude);

struct EquivalenceRun {
  ScalarField rho_hydro;
  ScalarField rho_gp;
  double seconds = 0.0;
};

/// Node-free perturbed condensate (V = 0) evolved to t_end by both engines:
/// rho = 1 + 0.2 cos x + 0.1 sin 2x, u = 0.1 sin x on L = 2 pi, n = 128.
EquivalenceRun oracle_equivalence_run(const PhysParams& params, double t_end);

/// Drift of a supposedly stationary state over t_end:
/// density = max|rho(t) - rho(0)| / max rho(0) / t_end and
/// velocity = max over nodes with rho > 1e-6 max rho of |u(t)| / t_end.
struct DriftRates {
  double density = 0.0;
  double velocity = 0.0;
};

DriftRates hydro_drift(const FluidState& initial, const HydroSystem& system, double t_end, double dt);
DriftRates gp_drift(const WaveFunction& initial, const PhysParams& params, const ExternalPotential& vext,
                    double n_total, double t_end, double dt);

/// Cold beam n = 1 + 0.2 cos x, u = 0.1 sin x, eps = 0.05, v_max = 0.6 on L = 2 pi
/// with hbar = m = 1, V = 0; worst moment residuals over every interior step up to t_end.
/// The force scheme is used both in the Liouville step and in the residuals.
MomentResidualReport cold_beam_residuals(std::size_t n_x, std::size_t n_v, double dt, double t_end,
                                         DiffScheme scheme = DiffScheme::CentralFD2);

}  // namespace qhydro::scenarios
