#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qhydro/grid.hpp"

namespace qhydro {

/// Real-valued samples of a function on a Grid1D.
class ScalarField {
 public:
  explicit ScalarField(const Grid1D& grid, double fill = 0.0);
  ScalarField(const Grid1D& grid, std::vector<double> values);

  static ScalarField from_function(const Grid1D& grid, const std::function<double(double)>& f);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s) noexcept;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/// Complex-valued samples on a Grid1D (wavefunctions).
class ComplexField {
 public:
  using value_type = std::complex<double>;

  explicit ComplexField(const Grid1D& grid, value_type fill = {});
  ComplexField(const Grid1D& grid, std::vector<value_type> values);

  static ComplexField from_function(const Grid1D& grid,
                                    const std::function<value_type(double)>& f);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const value_type> values() const noexcept { return values_; }
  std::span<value_type> values() noexcept { return values_; }

  value_type operator[](std::size_t i) const noexcept { return values_[i]; }
  value_type& operator[](std::size_t i) noexcept { return values_[i]; }

  bool all_finite() const noexcept;
  /// |psi|^2 pointwise.
  ScalarField modulus_squared() const;

 private:
  Grid1D grid_;
  std::vector<value_type> values_;
};

/// Throws NonFiniteInput naming `what` if any sample is NaN or infinite.
void require_finite(const ScalarField& f, const char* what);
void require_finite(const ComplexField& f, const char* what);
/// Throws InvalidArgument if the grids differ.
void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what);

}  // namespace qhydro
