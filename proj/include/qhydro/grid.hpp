#pragma once

#include <cstddef>

namespace qhydro {

/// Uniform periodic grid on [0, length). Node i sits at x_i = i * spacing.
class Grid1D {
 public:
  /// Throws InvalidArgument unless n_points >= 8, n_points is even and length > 0.
  Grid1D(std::size_t n_points, double length);

  std::size_t n_points() const noexcept { return n_points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return spacing_; }
  bool periodic() const noexcept { return true; }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * spacing_; }

  /// Angular wavenumber of the j-th Fourier mode, 2*pi*j/L.
  double wavenumber(double j) const noexcept;
  /// Largest resolvable wavenumber, pi/dx.
  double nyquist() const noexcept;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_points_;
  double length_;
  double spacing_;
};

}  // namespace qhydro
