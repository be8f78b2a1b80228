#pragma once

#include <complex>
#include <span>
#include <string_view>

#include "qhydro/field.hpp"

namespace qhydro {

/// Discretization used for spatial derivatives.
enum class DiffScheme { Spectral, CentralFD2, CentralFD4 };

std::string_view to_string(DiffScheme scheme);
/// Parses "spectral", "fd2", "fd4" (case-sensitive). Throws InvalidArgument.
DiffScheme parse_diff_scheme(std::string_view name);

// Field-level operators. All throw NonFiniteInput on NaN/Inf input and
// return exact zeros for constant input under every scheme.

ScalarField gradient(const ScalarField& f, DiffScheme scheme = DiffScheme::Spectral);
ScalarField laplacian(const ScalarField& f, DiffScheme scheme = DiffScheme::Spectral);
ScalarField third_derivative(const ScalarField& f, DiffScheme scheme = DiffScheme::Spectral);
/// Laplacian applied twice; the spectral scheme applies k^4 in one pass.
ScalarField biharmonic(const ScalarField& f, DiffScheme scheme = DiffScheme::Spectral);

/// Rectangle rule sum(f) * dx, exact for periodic trigonometric polynomials.
double integrate(const ScalarField& f);

/// Spectral d/dx of a complex field.
ComplexField gradient(const ComplexField& f);

/// Unnormalized-by-n Fourier coefficient (1/n) sum_i f_i exp(-i k_j x_i) of mode j.
std::complex<double> fourier_coefficient(const ScalarField& f, long j);

/// Periodic translation f(x) -> f(x - distance), exact for resolved modes.
ScalarField spectral_shift(const ScalarField& f, double distance);

/// Zero-mean periodic antiderivative of f - mean(f).
ScalarField periodic_antiderivative(const ScalarField& f);

/// Exponential low-pass filter exp(-strength * (|k|/k_nyquist)^order).
ScalarField spectral_filter(const ScalarField& f, double strength = 36.0, int order = 36);

namespace kernels {

// Allocation-light variants used inside time steppers. `out` may not alias `f`.
void derivative(std::span<const double> f, std::span<double> out, int order, DiffScheme scheme,
                double length);
void filter(std::span<double> f, double strength, int order);
void shift(std::span<double> f, double distance, double length);

}  // namespace kernels

}  // namespace qhydro
