#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <vector>

#include "qhydro/acoustics.hpp"
#include "qhydro/error.hpp"
#include "qhydro/scenarios.hpp"
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

AcousticState eigenmode(const Grid1D& g, const PhysParams& p, double k, double amp) {
  const double w = bogoliubov_omega(k, p);
  return {ScalarField::from_function(g, [&](double x) { return amp * std::cos(k * x); }),
          ScalarField::from_function(g, [&](double x) { return amp * w / (p.rho0 * k) * std::cos(k * x); }), 0.0};
}

AcousticState run(AcousticState s, const PhysParams& p, double t_end, double dt_max) {
  const auto n = static_cast<std::size_t>(std::ceil(t_end / dt_max));
  for (std::size_t i = 0; i < n; ++i) s = acoustic_step(s, p, t_end / static_cast<double>(n));
  return s;
}

}  // namespace

TEST_SUITE("acoustics") {

TEST_CASE("sound speed") {
  PhysParams p;
  CHECK(sound_speed(p) == 0.0);
  p = scenarios::unit_condensate();
  CHECK(sound_speed(p) == doctest::Approx(1.0).epsilon(1e-15));
  p.rho0 = 2.0;
  CHECK(sound_speed(p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sound_speed(p) * sound_speed(p) == doctest::Approx(p.sound_speed_squared(p.rho0)).epsilon(1e-15));
}

TEST_CASE("Bogoliubov dispersion closed forms") {
  PhysParams free;
  free.mass = 2.0;
  for (double k : {0.5, 1.0, 7.0}) CHECK(bogoliubov_omega(k, free) == doctest::Approx(free.hbar * k * k / (2 * free.mass)).epsilon(1e-15));
  const PhysParams p = scenarios::unit_condensate();
  CHECK(bogoliubov_omega(0.0, p) == 0.0);
  CHECK(bogoliubov_omega(2.0, p) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bogoliubov_omega(1e-4, p) / 1e-4 == doctest::Approx(sound_speed(p)).epsilon(1e-8));
  for (double k : {0.1, 1.0, 3.0, 10.0}) {
    const double w = bogoliubov_omega(k, p);
    const double c = sound_speed(p);
    CHECK(std::abs(w * w - (c * c * k * k + p.hbar * p.hbar * std::pow(k, 4) / (4 * p.mass * p.mass))) <=
          1e-14 * w * w);
  }
}

TEST_CASE("dispersion is monotone in k, a and rho0") {
  PhysParams p = scenarios::unit_condensate();
  double prev = 0.0;
  for (double k = 0.1; k < 20.0; k += 0.1) {
    const double w = bogoliubov_omega(k, p);
    CHECK(w > prev);
    prev = w;
  }
  const double base = bogoliubov_omega(1.0, p);
  PhysParams more_a = p;
  more_a.scatter_len *= 2.0;
  PhysParams denser = p;
  denser.rho0 *= 2.0;
  CHECK(bogoliubov_omega(1.0, more_a) > base);
  CHECK(bogoliubov_omega(1.0, denser) > base);
}

TEST_CASE("heisenberg scale") {
  const PhysParams unit;
  CHECK(heisenberg_scale(1.0, 1.0, unit) == 1.0);
  PhysParams p;
  p.hbar = 10.0;
  CHECK(1.0 / heisenberg_scale(1.0, 1.0, p) == doctest::Approx(10.0));
  CHECK(heisenberg_scale(2.0, 3.0, unit) == 6.0);
  CHECK(kind_of([&] { heisenberg_scale(0.0, 1.0, unit); }) == ErrorKind::InvalidArgument);
  p.hbar = 0.0;
  CHECK(kind_of([&] { heisenberg_scale(1.0, 1.0, p); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("helium quantum scale") {
  const PhysParams he = helium4_params();
  const double hbar_over_m = 1.0 / heisenberg_scale(1.0, 1.0, he);
  CHECK(hbar_over_m == doctest::Approx(1.054571817e-34 / 6.6464731e-27).epsilon(1e-12));
  CHECK(hbar_over_m >= 1.5e-8);
  CHECK(hbar_over_m <= 1.7e-8);
}

TEST_CASE("linear regime flag") {
  const Grid1D g(32, two_pi);
  const PhysParams p;
  CHECK(in_linear_regime({ScalarField(g, 0.04), ScalarField(g), 0.0}, p));
  CHECK_FALSE(in_linear_regime({ScalarField(g, 0.06), ScalarField(g), 0.0}, p));
}

TEST_CASE("zero perturbation stays zero") {
  const Grid1D g(32, two_pi);
  const PhysParams p = scenarios::unit_condensate();
  const AcousticState s = acoustic_step({ScalarField(g), ScalarField(g), 0.0}, p, 1e-3);
  CHECK(s.rho1.max_abs() == 0.0);
  CHECK(s.u1.max_abs() == 0.0);
}

TEST_CASE("eigenmode returns after one period") {
  const Grid1D g(64, two_pi);
  const PhysParams p = scenarios::unit_condensate();
  const double k = 3.0;
  const AcousticState s = eigenmode(g, p, k, 1e-3);
  const double period = two_pi / bogoliubov_omega(k, p);
  const AcousticState end = run(s, p, period, 0.5 * acoustic_max_dt(g, p));
  CHECK(max_abs_diff(end.rho1, s.rho1) <= 1e-6 * 1e-3);
  CHECK(max_abs_diff(end.u1, s.u1) <= 1e-6 * s.u1.max_abs());
}

TEST_CASE("quadratic energy is conserved") {
  const Grid1D g(64, two_pi);
  const PhysParams p = scenarios::unit_condensate();
  AcousticState s{ScalarField::from_function(g, [](double x) { return 0.01 * std::cos(x) + 0.004 * std::sin(4 * x); }),
                  ScalarField::from_function(g, [](double x) { return 0.002 * std::sin(2 * x); }), 0.0};
  const double e0 = acoustic_energy(s, p);
  const AcousticState end = run(s, p, two_pi / bogoliubov_omega(1.0, p), 0.5 * acoustic_max_dt(g, p));
  CHECK(std::abs(acoustic_energy(end, p) - e0) <= 1e-8 * e0);
}

TEST_CASE("evolution is linear") {
  const Grid1D g(64, two_pi);
  const PhysParams p = scenarios::unit_condensate();
  const AcousticState a = eigenmode(g, p, 2.0, 1e-3);
  const AcousticState b{ScalarField::from_function(g, [](double x) { return 1e-3 * std::sin(5 * x); }), ScalarField(g), 0.0};
  const AcousticState sum{a.rho1 + b.rho1, a.u1 + b.u1, 0.0};
  const double dt = 0.5 * acoustic_max_dt(g, p);
  const AcousticState ra = run(a, p, 0.3, dt);
  const AcousticState rb = run(b, p, 0.3, dt);
  const AcousticState rs = run(sum, p, 0.3, dt);
  CHECK(max_abs_diff(rs.rho1, ra.rho1 + rb.rho1) <= 1e-10 * 1e-3);
  CHECK(max_abs_diff(rs.u1, ra.u1 + rb.u1) <= 1e-10 * 1e-3);
}

TEST_CASE("acoustic step limit") {
  const Grid1D g(64, two_pi);
  const PhysParams p = scenarios::unit_condensate();
  const double dx = g.spacing();
  CHECK(acoustic_max_dt(g, p) == doctest::Approx(std::min(dx, dx * dx / pi)));
  CHECK(kind_of([&] { acoustic_step(eigenmode(g, p, 1.0, 1e-3), p, 2 * acoustic_max_dt(g, p)); }) ==
        ErrorKind::CflViolation);
}

TEST_CASE("linear model reproduces the dispersion relation") {
  const PhysParams p = scenarios::unit_condensate();
  const std::array<long, 3> modes{1, 2, 3};
  DispersionOptions opt;
  opt.n_points = 64;
  const double dt = dispersion_time_step(p, 1e-3, modes, opt);
  for (ModeShape shape : {ModeShape::Traveling, ModeShape::Standing}) {
    opt.shape = shape;
    const DispersionCurve c = measure_dispersion_periods(DispersionSource::LinearAcoustic, modes, 1e-3, p, 5.0, dt, opt);
    REQUIRE(c.entries.size() == modes.size());
    CHECK(c.max_rel_err() <= 1e-4);
    CHECK(c.entries[1].k == doctest::Approx(2.0));
  }
}

TEST_CASE("measured frequency does not depend on the amplitude") {
  const PhysParams p = scenarios::unit_condensate();
  const std::array<long, 1> modes{2};
  DispersionOptions opt;
  opt.n_points = 64;
  const double dt = dispersion_time_step(p, 1e-3, modes, opt);
  const double w1 = measure_dispersion_periods(DispersionSource::NonlinearHydroGP, modes, 1e-3, p, 5.0, dt, opt).entries[0].omega_measured;
  const double w2 = measure_dispersion_periods(DispersionSource::NonlinearHydroGP, modes, 5e-4, p, 5.0, dt, opt).entries[0].omega_measured;
  CHECK(std::abs(w1 - w2) <= 1e-3 * w1);
}

TEST_CASE("parallel and serial measurements are identical") {
  const PhysParams p = scenarios::unit_condensate();
  const std::array<long, 3> modes{1, 2, 3};
  DispersionOptions opt;
  opt.n_points = 64;
  const double dt = dispersion_time_step(p, 1e-3, modes, opt);
  const auto par = measure_dispersion_periods(DispersionSource::GpOracle, modes, 1e-3, p, 5.0, dt, opt);
  opt.parallel = false;
  const auto ser = measure_dispersion_periods(DispersionSource::GpOracle, modes, 1e-3, p, 5.0, dt, opt);
  for (std::size_t i = 0; i < modes.size(); ++i) CHECK(par.entries[i].omega_measured == ser.entries[i].omega_measured);
}

TEST_CASE("dispersion measurement rejects bad requests") {
  const PhysParams p = scenarios::unit_condensate();
  const std::array<long, 1> modes{1};
  DispersionOptions opt;
  opt.n_points = 64;
  const double dt = dispersion_time_step(p, 1e-3, modes, opt);
  CHECK(kind_of([&] { measure_dispersion(DispersionSource::NonlinearHydroGP, modes, 0.02, p, 50.0, dt, opt); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { measure_dispersion(DispersionSource::LinearAcoustic, modes, 1e-3, p, 1.0, dt, opt); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { measure_dispersion_periods(DispersionSource::LinearAcoustic, modes, 1e-3, p, 4.0, dt, opt); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("phase slope fit") {
  std::vector<double> t;
  std::vector<std::complex<double>> z;
  for (int i = 0; i < 100; ++i) {
    t.push_back(0.05 * i);
    z.push_back(std::polar(2.0, -3.0 * t.back() + 0.4));
  }
  CHECK(fit_phase_slope(t, z) == doctest::Approx(-3.0).epsilon(1e-12));
  std::vector<std::complex<double>> wobble;
  for (double ti : t) wobble.push_back(std::polar(1.0, std::sin(2.0 * ti)));
  CHECK(kind_of([&] { fit_phase_slope(t, wobble); }) == ErrorKind::FitFailed);
  std::vector<std::complex<double>> dead(t.size(), 0.0);
  CHECK(kind_of([&] { fit_phase_slope(t, dead); }) == ErrorKind::FitFailed);
}

TEST_CASE("analytic signal of a cosine") {
  const std::size_t n = 64;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(two_pi * 5.0 * static_cast<double>(i) / n);
  const auto z = analytic_signal(x);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(z[i] - std::polar(1.0, two_pi * 5.0 * static_cast<double>(i) / n)) <= 1e-12);
  }
}

TEST_CASE("dispersion CSV round trip") {
  DispersionCurve c;
  c.entries.push_back({1, 1.0, 1.118, 1.1180339887498949, 1.2e-6});
  c.entries.push_back({2, 2.0, 2.8284, 2.8284271247461903, 3.4e-7});
  const auto path = std::filesystem::temp_directory_path() / "qhydro_dispersion_roundtrip.csv";
  write_dispersion_csv(path, c);
  const DispersionCurve back = read_dispersion_csv(path);
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[1].omega_analytic == c.entries[1].omega_analytic);
  CHECK(back.entries[0].rel_err == c.entries[0].rel_err);
  CHECK(back.max_rel_err() == c.max_rel_err());
  std::filesystem::remove(path);
}

TEST_CASE("source names") {
  for (auto s : {DispersionSource::LinearAcoustic, DispersionSource::NonlinearHydroGP, DispersionSource::GpOracle}) {
    CHECK(parse_dispersion_source(to_string(s)) == s);
  }
  CHECK(kind_of([] { parse_dispersion_source("nope"); }) == ErrorKind::InvalidArgument);
}

}  // TEST_SUITE
