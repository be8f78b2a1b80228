#include "qhydro/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhydro/error.hpp"

namespace qhydro {

ScalarField::ScalarField(const Grid1D& grid, double fill)
    : grid_(grid), values_(grid.n_points(), fill) {}

ScalarField::ScalarField(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_points()) {
    throw Error(ErrorKind::InvalidArgument,
                "field has " + std::to_string(values_.size()) + " values for a grid of " +
                    std::to_string(grid_.n_points()) + " points");
  }
}

ScalarField ScalarField::from_function(const Grid1D& grid,
                                       const std::function<double(double)>& f) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid.n_points(); ++i) out.values_[i] = f(grid.x(i));
  return out;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "field subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise product");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ComplexField::ComplexField(const Grid1D& grid, value_type fill)
    : grid_(grid), values_(grid.n_points(), fill) {}

ComplexField::ComplexField(const Grid1D& grid, std::vector<value_type> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_points()) {
    throw Error(ErrorKind::InvalidArgument, "complex field size does not match its grid");
  }
}

ComplexField ComplexField::from_function(const Grid1D& grid,
                                         const std::function<value_type(double)>& f) {
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.n_points(); ++i) out.values_[i] = f(grid.x(i));
  return out;
}

bool ComplexField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const value_type& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ScalarField ComplexField::modulus_squared() const {
  ScalarField out(grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::norm(values_[i]);
  return out;
}

void require_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw Error(ErrorKind::NonFiniteInput, std::string(what) + " contains NaN/Inf");
}

void require_finite(const ComplexField& f, const char* what) {
  if (!f.all_finite()) throw Error(ErrorKind::NonFiniteInput, std::string(what) + " contains NaN/Inf");
}

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": grid mismatch");
}

}  // namespace qhydro
