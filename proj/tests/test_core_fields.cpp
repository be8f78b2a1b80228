#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <thread>
#include <vector>

#include "qhydro/diff.hpp"
#include "qhydro/error.hpp"
#include "qhydro/field.hpp"
#include "qhydro/field_io.hpp"
#include "qhydro/grid.hpp"
#include "support.hpp"

using namespace qhydro;
using qtest::max_abs_diff;
using qtest::pi;
using qtest::two_pi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qhydro::Error");
  return ErrorKind::InvalidArgument;
}

ScalarField bump(const Grid1D& g) {
  return ScalarField::from_function(g, [](double x) { return std::exp(std::sin(x)) + 0.3 * std::cos(2.0 * x); });
}

// Exact derivatives of bump().
double bump_d1(double x) { return std::cos(x) * std::exp(std::sin(x)) - 0.6 * std::sin(2.0 * x); }
double bump_d2(double x) {
  return (std::cos(x) * std::cos(x) - std::sin(x)) * std::exp(std::sin(x)) - 1.2 * std::cos(2.0 * x);
}

double fd_error(std::size_t n, DiffScheme scheme, int order) {
  const Grid1D g(n, two_pi);
  const ScalarField f = bump(g);
  if (order == 1) return max_abs_diff(gradient(f, scheme), bump_d1);
  return max_abs_diff(laplacian(f, scheme), bump_d2);
}

}  // namespace

TEST_SUITE("core_fields") {

TEST_CASE("grid spacing and node placement") {
  const Grid1D g(64, two_pi);
  CHECK(g.spacing() == two_pi / 64.0);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(10) == 10.0 * g.spacing());
  CHECK(g.periodic());
  CHECK(g.wavenumber(3) == doctest::Approx(3.0));
  CHECK(g.nyquist() == doctest::Approx(32.0));
}

TEST_CASE("grid rejects bad sizes") {
  CHECK(kind_of([] { Grid1D(6, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid1D(33, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid1D(32, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Grid1D(32, -2.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("field arithmetic and reductions") {
  const Grid1D g(16, 1.0);
  ScalarField a = ScalarField::from_function(g, [](double x) { return x - 0.5; });
  const ScalarField b(g, 2.0);
  const ScalarField c = a + b;
  CHECK(c[3] == doctest::Approx(a[3] + 2.0));
  CHECK((c - b)[5] == a[5]);
  CHECK((2.0 * a)[7] == 2.0 * a[7]);
  CHECK(hadamard(a, b)[4] == 2.0 * a[4]);
  CHECK(a.min() == -0.5);
  CHECK(a.max() == doctest::Approx(0.5 - 1.0 / 16.0));
  CHECK(a.max_abs() == 0.5);
  a[2] = std::nan("");
  CHECK_FALSE(a.all_finite());
  CHECK(kind_of([&] { require_finite(a, "a"); }) == ErrorKind::NonFiniteInput);
  CHECK(kind_of([&] { (void)(b + ScalarField(Grid1D(32, 1.0))); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("complex field modulus") {
  const Grid1D g(16, two_pi);
  const ComplexField psi = ComplexField::from_function(g, [](double x) { return std::polar(2.0, x); });
  const ScalarField m = psi.modulus_squared();
  for (std::size_t i = 0; i < g.n_points(); ++i) CHECK(m[i] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("constant fields have exactly zero derivatives") {
  const Grid1D g(64, 3.0);
  const ScalarField f(g, 1.7);
  for (DiffScheme s : {DiffScheme::Spectral, DiffScheme::CentralFD2, DiffScheme::CentralFD4}) {
    CHECK(gradient(f, s).max_abs() == 0.0);
    CHECK(laplacian(f, s).max_abs() == 0.0);
    CHECK(third_derivative(f, s).max_abs() == 0.0);
    CHECK(biharmonic(f, s).max_abs() == 0.0);
  }
}

TEST_CASE("spectral derivatives of sin are exact") {
  const Grid1D g(64, two_pi);
  const ScalarField f = ScalarField::from_function(g, [](double x) { return std::sin(x); });
  CHECK(max_abs_diff(gradient(f), [](double x) { return std::cos(x); }) <= 1e-12);
  CHECK(max_abs_diff(laplacian(f), [](double x) { return -std::sin(x); }) <= 1e-12);
  // Round-off grows like eps * k_nyquist^order.
  CHECK(max_abs_diff(third_derivative(f), [](double x) { return -std::cos(x); }) <= 1e-10);
  CHECK(max_abs_diff(biharmonic(f), [](double x) { return std::sin(x); }) <= 1e-9);
}

TEST_CASE("second-order difference matches its Fourier symbol") {
  // The centred difference maps sin(kx) to sin(k dx)/dx * cos(kx).
  const Grid1D g(64, two_pi);
  const double dx = g.spacing();
  for (double k : {1.0, 5.0, 17.0}) {
    const ScalarField f = ScalarField::from_function(g, [k](double x) { return std::sin(k * x); });
    const double sym1 = std::sin(k * dx) / dx;
    const double sym2 = (2.0 * std::cos(k * dx) - 2.0) / (dx * dx);
    CHECK(max_abs_diff(gradient(f, DiffScheme::CentralFD2), [&](double x) { return sym1 * std::cos(k * x); }) <= 1e-11);
    CHECK(max_abs_diff(laplacian(f, DiffScheme::CentralFD2), [&](double x) { return sym2 * std::sin(k * x); }) <=
          1e-9);
  }
}

TEST_CASE("finite-difference convergence orders") {
  for (int order : {1, 2}) {
    CAPTURE(order);
    const double o2 = qtest::order_from(fd_error(64, DiffScheme::CentralFD2, order), fd_error(128, DiffScheme::CentralFD2, order));
    const double o4 = qtest::order_from(fd_error(64, DiffScheme::CentralFD4, order), fd_error(128, DiffScheme::CentralFD4, order));
    CHECK(o2 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(o4 == doctest::Approx(4.0).epsilon(0.05));
  }
  CHECK(fd_error(64, DiffScheme::Spectral, 1) <= 1e-12);
  CHECK(fd_error(64, DiffScheme::Spectral, 2) <= 1e-12);
}

TEST_CASE("biharmonic equals the laplacian applied twice") {
  const Grid1D g(128, two_pi);
  const ScalarField f = bump(g);
  for (DiffScheme s : {DiffScheme::Spectral, DiffScheme::CentralFD2, DiffScheme::CentralFD4}) {
    const ScalarField twice = laplacian(laplacian(f, s), s);
    CHECK(max_abs_diff(biharmonic(f, s), twice) <= 1e-9 * twice.max_abs());
  }
}

TEST_CASE("integration") {
  const Grid1D g(128, two_pi);
  CHECK(integrate(ScalarField(g, 3.0)) == doctest::Approx(3.0 * two_pi).epsilon(1e-14));
  CHECK(std::abs(integrate(ScalarField::from_function(g, [](double x) { return std::sin(3.0 * x); }))) <= 1e-12);
  const double s = 0.3;
  const ScalarField gauss = ScalarField::from_function(
      g, [s](double x) { return std::exp(-(x - pi) * (x - pi) / (2 * s * s)) / (s * std::sqrt(two_pi)); });
  CHECK(integrate(gauss) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(integrate(gradient(bump(g)))) <= 1e-12);
}

TEST_CASE("derivatives reject non-finite input") {
  const Grid1D g(16, 1.0);
  ScalarField f(g, 1.0);
  f[0] = INFINITY;
  CHECK(kind_of([&] { gradient(f); }) == ErrorKind::NonFiniteInput);
  CHECK(kind_of([&] { laplacian(f, DiffScheme::CentralFD4); }) == ErrorKind::NonFiniteInput);
}

TEST_CASE("scheme names") {
  CHECK(parse_diff_scheme("spectral") == DiffScheme::Spectral);
  CHECK(parse_diff_scheme("fd2") == DiffScheme::CentralFD2);
  CHECK(parse_diff_scheme("fd4") == DiffScheme::CentralFD4);
  CHECK(to_string(DiffScheme::CentralFD4) == "fd4");
  CHECK(kind_of([] { parse_diff_scheme("Spectral"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("fourier coefficients, shifts and antiderivatives") {
  const Grid1D g(32, two_pi);
  const ScalarField f = ScalarField::from_function(g, [](double x) { return 1.0 + 0.4 * std::cos(2.0 * x); });
  CHECK(std::abs(fourier_coefficient(f, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(fourier_coefficient(f, 2) - 0.2) <= 1e-14);
  CHECK(std::abs(fourier_coefficient(f, 3)) <= 1e-14);
  const ScalarField moved = spectral_shift(f, 0.7);
  CHECK(max_abs_diff(moved, [](double x) { return 1.0 + 0.4 * std::cos(2.0 * (x - 0.7)); }) <= 1e-13);
  const ScalarField cosine = ScalarField::from_function(g, [](double x) { return 2.0 + std::cos(x); });
  CHECK(max_abs_diff(periodic_antiderivative(cosine), [](double x) { return std::sin(x); }) <= 1e-13);
}

TEST_CASE("spectral filter leaves low modes alone") {
  const Grid1D g(64, two_pi);
  const ScalarField low = ScalarField::from_function(g, [](double x) { return std::sin(3.0 * x); });
  CHECK(max_abs_diff(spectral_filter(low), low) <= 1e-14);
  const ScalarField nyq = ScalarField::from_function(g, [](double x) { return std::cos(32.0 * x); });
  CHECK(spectral_filter(nyq).max_abs() <= 1e-14);
}

TEST_CASE("derivatives give identical results on several threads") {
  const Grid1D g(256, two_pi);
  const ScalarField f = bump(g);
  const ScalarField ref = laplacian(f);
  std::vector<ScalarField> out(4, ScalarField(g));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < out.size(); ++t) pool.emplace_back([&, t] { out[t] = laplacian(f); });
  for (auto& th : pool) th.join();
  for (const auto& o : out) CHECK(o.data() == ref.data());
}

TEST_CASE("field CSV round trip is bit exact") {
  const auto path = std::filesystem::temp_directory_path() / "qhydro_field_roundtrip.csv";
  const Grid1D g(64, 5.0);
  const ScalarField f = bump(g);
  write_field_csv(path, f, "rho");
  const auto [name, back] = read_field_csv(path);
  CHECK(name == "rho");
  CHECK(back.grid() == g);
  CHECK(back.data() == f.data());
  std::filesystem::remove(path);
  CHECK(kind_of([&] { read_field_csv(path); }) == ErrorKind::MissingArtifact);
}

TEST_CASE("numbers keep every bit through text") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_number(v)) == v);
}

}  // TEST_SUITE
