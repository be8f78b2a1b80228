#include "qhydro/diff.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qhydro/error.hpp"
#include "qhydro/spectral.hpp"

namespace qhydro {

std::string_view to_string(DiffScheme scheme) {
  switch (scheme) {
    case DiffScheme::Spectral: return "spectral";
    case DiffScheme::CentralFD2: return "fd2";
    case DiffScheme::CentralFD4: return "fd4";
  }
  return "unknown";
}

DiffScheme parse_diff_scheme(std::string_view name) {
  if (name == "spectral") return DiffScheme::Spectral;
  if (name == "fd2") return DiffScheme::CentralFD2;
  if (name == "fd4") return DiffScheme::CentralFD4;
  throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

namespace kernels {

namespace {

std::vector<std::complex<double>>& half_spectrum(std::size_t n) {
  thread_local std::vector<std::complex<double>> buf;
  buf.resize(n / 2 + 1);
  return buf;
}

std::vector<double>& scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  buf.resize(n);
  return buf;
}

// Multipliers (ik)^order for the half spectrum, cached per thread for the last
// (n, length, order) requested at each order.
const std::vector<std::complex<double>>& derivative_multipliers(std::size_t n, int order,
                                                                double length) {
  struct Entry {
    std::size_t n = 0;
    double length = 0.0;
    std::vector<std::complex<double>> mult;
  };
  thread_local Entry cache[5];
  Entry& e = cache[order];
  if (e.n != n || e.length != length) {
    e.n = n;
    e.length = length;
    e.mult.assign(n / 2 + 1, 0.0);
    const double dk = 2.0 * std::numbers::pi / length;
    for (std::size_t j = 1; j < e.mult.size(); ++j) {
      if (j == n / 2 && order % 2 == 1) continue;
      std::complex<double> m = 1.0;
      for (int p = 0; p < order; ++p) m *= std::complex<double>(0.0, dk * static_cast<double>(j));
      e.mult[j] = m;
    }
  }
  return e.mult;
}

void spectral_derivative(std::span<const double> f, std::span<double> out, int order,
                         double length) {
  const std::size_t n = f.size();
  auto& ws = spectral::workspace(n);
  auto& hat = half_spectrum(n);
  // Removing f[0] leaves the derivative unchanged and makes constants map to exact zeros.
  auto& shifted = scratch(n);
  const double offset = f[0];
  for (std::size_t i = 0; i < n; ++i) shifted[i] = f[i] - offset;
  ws.forward(shifted, hat);
  const auto& mult = derivative_multipliers(n, order, length);
  for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= mult[j];
  ws.inverse(hat, out);
}

template <typename Stencil>
void apply_periodic(std::span<const double> f, std::span<double> out, Stencil&& st) {
  const long n = static_cast<long>(f.size());
  auto at = [&](long i) { return f[static_cast<std::size_t>(((i % n) + n) % n)]; };
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = st(at, i);
}

void fd_derivative(std::span<const double> f, std::span<double> out, int order, bool fourth,
                   double h) {
  // Stencils are written in differences so constant input gives exact zeros.
  switch (order) {
    case 1:
      if (!fourth) {
        apply_periodic(f, out, [h](auto at, long i) { return (at(i + 1) - at(i - 1)) / (2.0 * h); });
      } else {
        apply_periodic(f, out, [h](auto at, long i) {
          return (8.0 * (at(i + 1) - at(i - 1)) - (at(i + 2) - at(i - 2))) / (12.0 * h);
        });
      }
      return;
    case 2:
      if (!fourth) {
        apply_periodic(f, out, [h](auto at, long i) {
          const double c = at(i);
          return ((at(i + 1) - c) + (at(i - 1) - c)) / (h * h);
        });
      } else {
        apply_periodic(f, out, [h](auto at, long i) {
          const double c = at(i);
          return (16.0 * ((at(i + 1) - c) + (at(i - 1) - c)) - ((at(i + 2) - c) + (at(i - 2) - c))) /
                 (12.0 * h * h);
        });
      }
      return;
    case 3:
      if (!fourth) {
        apply_periodic(f, out, [h](auto at, long i) {
          return ((at(i + 2) - at(i - 2)) - 2.0 * (at(i + 1) - at(i - 1))) / (2.0 * h * h * h);
        });
      } else {
        apply_periodic(f, out, [h](auto at, long i) {
          return (-(at(i + 3) - at(i - 3)) + 8.0 * (at(i + 2) - at(i - 2)) -
                  13.0 * (at(i + 1) - at(i - 1))) /
                 (8.0 * h * h * h);
        });
      }
      return;
    case 4: {
      std::vector<double> tmp(f.size());
      fd_derivative(f, tmp, 2, fourth, h);
      fd_derivative(tmp, out, 2, fourth, h);
      return;
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "unsupported derivative order");
  }
}

}  // namespace

void derivative(std::span<const double> f, std::span<double> out, int order, DiffScheme scheme,
                double length) {
  if (order < 1 || order > 4) throw Error(ErrorKind::InvalidArgument, "unsupported derivative order");
  const double h = length / static_cast<double>(f.size());
  switch (scheme) {
    case DiffScheme::Spectral: spectral_derivative(f, out, order, length); return;
    case DiffScheme::CentralFD2: fd_derivative(f, out, order, false, h); return;
    case DiffScheme::CentralFD4: fd_derivative(f, out, order, true, h); return;
  }
}

void filter(std::span<double> f, double strength, int order) {
  const std::size_t n = f.size();
  auto& ws = spectral::workspace(n);
  auto& hat = half_spectrum(n);
  ws.forward(f, hat);
  struct Entry {
    std::size_t n = 0;
    double strength = 0.0;
    int order = 0;
    std::vector<double> gain;
  };
  thread_local Entry e;
  if (e.n != n || e.strength != strength || e.order != order) {
    e.n = n;
    e.strength = strength;
    e.order = order;
    e.gain.assign(n / 2 + 1, 1.0);
    const double nyq = static_cast<double>(n / 2);
    for (std::size_t j = 1; j < e.gain.size(); ++j) {
      e.gain[j] = std::exp(-strength * std::pow(static_cast<double>(j) / nyq, order));
    }
  }
  for (std::size_t j = 1; j < hat.size(); ++j) hat[j] *= e.gain[j];
  ws.inverse(hat, f);
}

void shift(std::span<double> f, double distance, double length) {
  const std::size_t n = f.size();
  auto& ws = spectral::workspace(n);
  auto& hat = half_spectrum(n);
  ws.forward(f, hat);
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 1; j < hat.size(); ++j) {
    const double phase = dk * static_cast<double>(j) * distance;
    if (j == n / 2) {
      hat[j] *= std::cos(phase);
    } else {
      hat[j] *= std::complex<double>(std::cos(phase), -std::sin(phase));
    }
  }
  ws.inverse(hat, f);
}

}  // namespace kernels

namespace {

ScalarField apply_derivative(const ScalarField& f, int order, DiffScheme scheme, const char* what) {
  require_finite(f, what);
  ScalarField out(f.grid());
  kernels::derivative(f.values(), out.values(), order, scheme, f.grid().length());
  return out;
}

}  // namespace

ScalarField gradient(const ScalarField& f, DiffScheme scheme) {
  return apply_derivative(f, 1, scheme, "gradient input");
}

ScalarField laplacian(const ScalarField& f, DiffScheme scheme) {
  return apply_derivative(f, 2, scheme, "laplacian input");
}

ScalarField third_derivative(const ScalarField& f, DiffScheme scheme) {
  return apply_derivative(f, 3, scheme, "third derivative input");
}

ScalarField biharmonic(const ScalarField& f, DiffScheme scheme) {
  return apply_derivative(f, 4, scheme, "biharmonic input");
}

double integrate(const ScalarField& f) {
  require_finite(f, "integrand");
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().spacing();
}

ComplexField gradient(const ComplexField& f) {
  require_finite(f, "complex gradient input");
  const std::size_t n = f.size();
  auto& ws = spectral::workspace(n);
  std::vector<std::complex<double>> hat(n);
  ws.forward(f.values(), hat);
  const double dk = 2.0 * std::numbers::pi / f.grid().length();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == n / 2) {
      hat[j] = 0.0;
      continue;
    }
    hat[j] *= std::complex<double>(0.0, dk * static_cast<double>(spectral::frequency_index(j, n)));
  }
  ComplexField out(f.grid());
  ws.inverse(hat, out.values());
  return out;
}

std::complex<double> fourier_coefficient(const ScalarField& f, long j) {
  const long n = static_cast<long>(f.size());
  std::complex<double> acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const long r = (((j * i) % n) + n) % n;
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    acc += f[static_cast<std::size_t>(i)] * std::complex<double>(std::cos(arg), -std::sin(arg));
  }
  return acc / static_cast<double>(n);
}

ScalarField spectral_shift(const ScalarField& f, double distance) {
  require_finite(f, "shift input");
  ScalarField out = f;
  kernels::shift(out.values(), distance, f.grid().length());
  return out;
}

ScalarField periodic_antiderivative(const ScalarField& f) {
  require_finite(f, "antiderivative input");
  const std::size_t n = f.size();
  auto& ws = spectral::workspace(n);
  std::vector<std::complex<double>> hat(n / 2 + 1);
  ws.forward(f.values(), hat);
  const double dk = 2.0 * std::numbers::pi / f.grid().length();
  hat[0] = 0.0;
  hat[n / 2] = 0.0;
  for (std::size_t j = 1; j < n / 2; ++j) {
    hat[j] /= std::complex<double>(0.0, dk * static_cast<double>(j));
  }
  ScalarField out(f.grid());
  ws.inverse(hat, out.values());
  return out;
}

ScalarField spectral_filter(const ScalarField& f, double strength, int order) {
  require_finite(f, "filter input");
  ScalarField out = f;
  kernels::filter(out.values(), strength, order);
  return out;
}

}  // namespace qhydro
