#include "qhydro/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhydro/error.hpp"

namespace qhydro {

Grid1D::Grid1D(std::size_t n_points, double length)
    : n_points_(n_points), length_(length), spacing_(0.0) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "grid n_points must be even and >= 8, got " + std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidArgument, "grid length must be positive and finite");
  }
  spacing_ = length / static_cast<double>(n_points);
}

double Grid1D::wavenumber(double j) const noexcept {
  return 2.0 * std::numbers::pi * j / length_;
}

double Grid1D::nyquist() const noexcept { return std::numbers::pi / spacing_; }

}  // namespace qhydro
