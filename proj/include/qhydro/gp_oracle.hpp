#pragma once

#include <vector>

#include "qhydro/field.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/params.hpp"

namespace qhydro {

/// Single-particle condensate wavefunction psi_0, normalized so that int |psi|^2 dx = norm_target.
struct WaveFunction {
  ComplexField psi;
  double norm_target = 1.0;
  double time = 0.0;

  explicit WaveFunction(ComplexField psi_, double norm_target_ = 1.0, double time_ = 0.0);

  const Grid1D& grid() const noexcept { return psi.grid(); }
  /// int |psi|^2 dx
  double norm() const;
};

/// Strang split-step propagator for the Gross-Pitaevskii equation
///   i hbar psi_t = (-hbar^2/2m lap + V + G rho) psi,  rho = m N |psi|^2,  G = 4 pi hbar^2 a / m^2.
///
/// Kinetic phase factors are cached for a fixed dt, so repeated step() calls
/// cost two complex FFTs each.
class GpPropagator {
 public:
  GpPropagator(const Grid1D& grid, const PhysParams& params, const ExternalPotential& vext,
               double n_total, double dt);

  /// Advances wf by dt in place. Throws NormDrift if |norm - target| / target > 1e-10.
  void step(WaveFunction& wf);
  double dt() const noexcept { return dt_; }

 private:
  void potential_half_step(std::vector<std::complex<double>>& psi) const;

  PhysParams params_;
  std::vector<double> v_;
  double n_total_;
  double dt_;
  std::vector<std::complex<double>> kinetic_phase_;
  std::vector<std::complex<double>> hat_;
};

/// One Strang step of the GP equation (builds a GpPropagator).
WaveFunction gp_step(const WaveFunction& wf, const PhysParams& params,
                     const ExternalPotential& vext, double n_total, double dt);

/// Energy per particle
///   E = int (hbar^2/2m)|psi'|^2 + V|psi|^2 + (g/2) N |psi|^4 dx,  g = 4 pi hbar^2 a / m.
/// The gradient term is evaluated exactly in Fourier space.
double gp_energy(const WaveFunction& wf, const PhysParams& params, const ExternalPotential& vext,
                 double n_total);

/// rho = m N |psi|^2, u = (hbar/m) Im(conj(psi) psi') / max(|psi|^2, floor), temp absent.
/// Throws DivisionNearVacuum when |psi| vanishes and the floor is zero.
FluidState madelung_decompose(const WaveFunction& wf, const PhysParams& params, double n_total,
                              const VacuumPolicy& policy = {});

/// Inverse of madelung_decompose: psi = sqrt(rho / (m N)) exp(i S), S' = m u / hbar,
/// with S built from its winding part plus a zero-mean periodic part.
/// Throws PhaseWindingMismatch unless int m u / hbar dx is within 1e-6 of 2 pi * integer.
WaveFunction madelung_compose(const FluidState& state, const PhysParams& params, double n_total);

/// Winding number int (m u / hbar) dx / 2 pi of a velocity field (not rounded).
double phase_winding(const ScalarField& u, const PhysParams& params);

}  // namespace qhydro
