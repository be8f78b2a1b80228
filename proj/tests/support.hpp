#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhydro/field.hpp"

namespace qtest {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double max_abs_diff(const qhydro::ScalarField& a, const qhydro::ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class F>
double max_abs_diff(const qhydro::ScalarField& a, F exact) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - exact(a.grid().x(i))));
  return m;
}

/// Error ratio between two resolutions converted to an order for a 2x refinement.
inline double order_from(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace qtest
