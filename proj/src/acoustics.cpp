#include "qhydro/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "qhydro/error.hpp"
#include "qhydro/field_io.hpp"
#include "qhydro/gp_oracle.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/spectral.hpp"

namespace qhydro {

double sound_speed(const PhysParams& params) {
  return std::sqrt(std::max(params.sound_speed_squared(params.rho0), 0.0));
}

double bogoliubov_omega(double k, const PhysParams& params) {
  const double c2 = params.sound_speed_squared(params.rho0);
  const double q = params.hbar * k * k / (2.0 * params.mass);
  return std::sqrt(c2 * k * k + q * q);
}

double heisenberg_scale(double u0, double r0, const PhysParams& params) {
  if (!(u0 > 0.0) || !(r0 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "heisenberg_scale needs u0 > 0 and r0 > 0");
  }
  if (!(params.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be > 0");
  return u0 * r0 * params.mass / params.hbar;
}

PhysParams helium4_params() {
  PhysParams p;
  p.hbar = si::hbar;
  p.mass = si::helium4_mass;
  p.boltzmann = si::boltzmann;
  p.scatter_len = 0.0;
  p.rho0 = 145.0;  // liquid helium, kg/m^3
  return p;
}

bool in_linear_regime(const AcousticState& state, const PhysParams& params) {
  return state.rho1.max_abs() <= 0.05 * params.rho0;
}

double acoustic_max_dt(const Grid1D& grid, const PhysParams& params) {
  const double dx = grid.spacing();
  double dt = std::numeric_limits<double>::infinity();
  const double c = sound_speed(params);
  if (c > 0.0) dt = dx / c;
  if (params.hbar > 0.0) dt = std::min(dt, params.mass * dx * dx / (std::numbers::pi * params.hbar));
  return dt;
}

namespace {

// d rho1/dt and du1/dt of the linear system, written into dr and du.
struct LinearRhs {
  double rho0, c2, disp, length;
  DiffScheme scheme;
  std::vector<double> d1, d3;

  LinearRhs(const PhysParams& p, std::size_t n, double L, DiffScheme s)
      : rho0(p.rho0),
        c2(p.sound_speed_squared(p.rho0)),
        disp(p.hbar * p.hbar / (4.0 * p.mass * p.mass * p.rho0)),
        length(L),
        scheme(s),
        d1(n),
        d3(n) {}

  void operator()(std::span<const double> r, std::span<const double> u, std::span<double> dr,
                  std::span<double> du) {
    kernels::derivative(u, d1, 1, scheme, length);
    for (std::size_t i = 0; i < dr.size(); ++i) dr[i] = -rho0 * d1[i];
    kernels::derivative(r, d1, 1, scheme, length);
    if (disp != 0.0) {
      kernels::derivative(r, d3, 3, scheme, length);
    } else {
      std::fill(d3.begin(), d3.end(), 0.0);
    }
    for (std::size_t i = 0; i < du.size(); ++i) du[i] = -c2 / rho0 * d1[i] + disp * d3[i];
  }
};

// In-place RK4 integrator for the linear system with preallocated stages.
class LinearStepper {
 public:
  LinearStepper(const PhysParams& p, std::size_t n, double L, DiffScheme s)
      : rhs_(p, n, L, s), kr_(4, std::vector<double>(n)), ku_(4, std::vector<double>(n)),
        tr_(n), tu_(n) {}

  void step(std::span<double> r, std::span<double> u, double dt) {
    const std::size_t n = r.size();
    rhs_(r, u, kr_[0], ku_[0]);
    stage(r, u, 0.5 * dt, 0);
    rhs_(tr_, tu_, kr_[1], ku_[1]);
    stage(r, u, 0.5 * dt, 1);
    rhs_(tr_, tu_, kr_[2], ku_[2]);
    stage(r, u, dt, 2);
    rhs_(tr_, tu_, kr_[3], ku_[3]);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] += w * (kr_[0][i] + 2.0 * kr_[1][i] + 2.0 * kr_[2][i] + kr_[3][i]);
      u[i] += w * (ku_[0][i] + 2.0 * ku_[1][i] + 2.0 * ku_[2][i] + ku_[3][i]);
    }
  }

 private:
  void stage(std::span<const double> r, std::span<const double> u, double h, int k) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      tr_[i] = r[i] + h * kr_[k][i];
      tu_[i] = u[i] + h * ku_[k][i];
    }
  }

  LinearRhs rhs_;
  std::vector<std::vector<double>> kr_, ku_;
  std::vector<double> tr_, tu_;
};

void check_cfl(const Grid1D& grid, const PhysParams& params, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  const double limit = acoustic_max_dt(grid, params);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::CflViolation,
                "dt = " + std::to_string(dt) + " exceeds the acoustic limit " + std::to_string(limit));
  }
}

}  // namespace

AcousticState acoustic_step(const AcousticState& state, const PhysParams& params, double dt,
                            DiffScheme scheme) {
  params.validate();
  require_same_grid(state.rho1.grid(), state.u1.grid(), "acoustic velocity");
  require_finite(state.rho1, "density perturbation");
  require_finite(state.u1, "velocity perturbation");
  const Grid1D& g = state.rho1.grid();
  check_cfl(g, params, dt);
  AcousticState out = state;
  LinearStepper stepper(params, g.n_points(), g.length(), scheme);
  stepper.step(out.rho1.values(), out.u1.values(), dt);
  out.time = state.time + dt;
  return out;
}

double acoustic_energy(const AcousticState& state, const PhysParams& params, DiffScheme scheme) {
  const double c2 = params.sound_speed_squared(params.rho0);
  const ScalarField dr = gradient(state.rho1, scheme);
  const double disp = params.hbar * params.hbar / (8.0 * params.mass * params.mass * params.rho0);
  double acc = 0.0;
  for (std::size_t i = 0; i < dr.size(); ++i) {
    const double r = state.rho1[i];
    const double u = state.u1[i];
    acc += 0.5 * params.rho0 * u * u + c2 * r * r / (2.0 * params.rho0) + disp * dr[i] * dr[i];
  }
  return acc * state.rho1.grid().spacing();
}

std::string_view to_string(DispersionSource source) {
  switch (source) {
    case DispersionSource::LinearAcoustic: return "linear_acoustic";
    case DispersionSource::NonlinearHydroGP: return "hydro_gp";
    case DispersionSource::GpOracle: return "gp_oracle";
  }
  return "unknown";
}

DispersionSource parse_dispersion_source(std::string_view name) {
  if (name == "linear_acoustic") return DispersionSource::LinearAcoustic;
  if (name == "hydro_gp") return DispersionSource::NonlinearHydroGP;
  if (name == "gp_oracle") return DispersionSource::GpOracle;
  throw Error(ErrorKind::InvalidArgument, "unknown dispersion source '" + std::string(name) + "'");
}

double DispersionCurve::max_rel_err() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.rel_err));
  return m;
}

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "analytic_signal needs at least two samples");
  std::vector<std::complex<double>> z(x.begin(), x.end());
  auto& ws = spectral::workspace(n);
  ws.forward(z, z);
  // keep DC (and Nyquist for even n), double positive frequencies, drop negative ones
  for (std::size_t j = 1; j < n; ++j) {
    if (2 * j < n) {
      z[j] *= 2.0;
    } else if (2 * j > n) {
      z[j] = 0.0;
    }
  }
  ws.inverse(z, z);
  return z;
}

double fit_phase_slope(std::span<const double> t, std::span<const std::complex<double>> z) {
  const std::size_t n = t.size();
  if (n != z.size()) throw Error(ErrorKind::InvalidArgument, "time and amplitude series differ in length");
  if (n < 4) throw Error(ErrorKind::FitFailed, "need at least 4 samples for a phase fit");
  double zmax = 0.0;
  for (const auto& v : z) zmax = std::max(zmax, std::abs(v));
  if (!(zmax > 0.0) || !std::isfinite(zmax)) throw Error(ErrorKind::FitFailed, "mode amplitude is zero");

  std::vector<double> phase(n);
  std::vector<double> inc(n - 1);
  phase[0] = std::arg(z[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(z[i]) < 1e-8 * zmax) {
      throw Error(ErrorKind::FitFailed, "mode amplitude collapsed at sample " + std::to_string(i));
    }
    inc[i - 1] = std::arg(z[i] / z[i - 1]);
    phase[i] = phase[i - 1] + inc[i - 1];
  }
  double mean_inc = (phase.back() - phase.front()) / static_cast<double>(n - 1);
  if (mean_inc == 0.0) throw Error(ErrorKind::FitFailed, "phase does not advance");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (inc[i] * mean_inc < -0.1 * mean_inc * mean_inc) {
      throw Error(ErrorKind::FitFailed,
                  "phase series is not monotone at sample " + std::to_string(i + 1) + " (mode mixing)");
    }
  }

  double tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += t[i];
    pm += phase[i];
  }
  tm /= static_cast<double>(n);
  pm /= static_cast<double>(n);
  double stt = 0.0, stp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    stp += (t[i] - tm) * (phase[i] - pm);
  }
  if (!(stt > 0.0)) throw Error(ErrorKind::FitFailed, "sample times are degenerate");
  return stp / stt;
}

namespace {

struct ModeRun {
  DispersionSource source;
  long mode;
  double amplitude;
  const PhysParams& params;
  double t_end;
  double dt;
  const DispersionOptions& opt;

  DispersionEntry operator()() const {
    const Grid1D grid(opt.n_points, opt.length);
    const double k = grid.wavenumber(static_cast<double>(mode));
    const double omega = bogoliubov_omega(k, params);
    const bool travel = opt.shape == ModeShape::Traveling;

    ScalarField rho1 = ScalarField::from_function(grid, [&](double x) { return amplitude * std::cos(k * x); });
    const double u_amp = travel ? amplitude * omega / (params.rho0 * k) : 0.0;
    ScalarField u1 = ScalarField::from_function(grid, [&](double x) { return u_amp * std::cos(k * x); });

    const double period = 2.0 * std::numbers::pi / omega;
    const auto stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(period / (static_cast<double>(opt.samples_per_period) * dt)));
    const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));

    std::vector<double> times;
    std::vector<std::complex<double>> series;
    auto sample = [&](const ScalarField& rho, std::size_t step_index) {
      times.push_back(static_cast<double>(step_index) * dt);
      series.push_back(fourier_coefficient(rho, mode));
    };

    switch (source) {
      case DispersionSource::LinearAcoustic: {
        check_cfl(grid, params, dt);
        LinearStepper stepper(params, grid.n_points(), grid.length(), opt.scheme);
        sample(rho1, 0);
        for (std::size_t s = 1; s <= n_steps; ++s) {
          stepper.step(rho1.values(), u1.values(), dt);
          if (s % stride == 0) sample(rho1, s);
        }
        break;
      }
      case DispersionSource::NonlinearHydroGP: {
        HydroSystem sys;
        sys.model = FluidModel::GrossPitaevskii;
        sys.params = params;
        sys.scheme = opt.scheme;
        StepControl control;
        control.dt = dt;
        control.cfl_safety = opt.cfl_safety;
        FluidState s(ScalarField(grid, params.rho0) + rho1, u1);
        sample(s.rho - ScalarField(grid, params.rho0), 0);
        for (std::size_t i = 1; i <= n_steps; ++i) {
          s = step(s, sys, control);
          if (i % stride == 0) sample(s.rho, i);
        }
        break;
      }
      case DispersionSource::GpOracle: {
        const double n_total = params.rho0 * grid.length() / params.mass;
        const FluidState s(ScalarField(grid, params.rho0) + rho1, u1);
        WaveFunction wf = madelung_compose(s, params, n_total);
        GpPropagator prop(grid, params, ExternalPotential::none(grid), n_total, dt);
        const double scale = params.mass * n_total;
        auto density = [&] {
          ScalarField r = wf.psi.modulus_squared();
          r *= scale;
          return r;
        };
        sample(density(), 0);
        for (std::size_t i = 1; i <= n_steps; ++i) {
          prop.step(wf);
          if (i % stride == 0) sample(density(), i);
        }
        break;
      }
    }

    double slope = 0.0;
    if (travel) {
      slope = fit_phase_slope(times, series);
    } else {
      std::vector<double> re(series.size());
      for (std::size_t i = 0; i < re.size(); ++i) re[i] = series[i].real();
      const auto z = analytic_signal(re);
      const std::size_t cut = z.size() / 10;
      const std::size_t len = z.size() - 2 * cut;
      slope = fit_phase_slope(std::span(times).subspan(cut, len), std::span(z).subspan(cut, len));
    }

    DispersionEntry e;
    e.mode = mode;
    e.k = k;
    e.omega_measured = std::abs(slope);
    e.omega_analytic = omega;
    e.rel_err = std::abs(e.omega_measured - omega) / omega;
    return e;
  }
};

}  // namespace

namespace {

Grid1D checked_dispersion_grid(DispersionSource source, std::span<const long> modes, double amplitude,
                               const PhysParams& params, double dt, const DispersionOptions& options) {
  params.validate();
  if (!(params.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "measure_dispersion needs hbar > 0");
  if (modes.empty()) throw Error(ErrorKind::InvalidArgument, "no modes requested");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(amplitude > 0.0)) throw Error(ErrorKind::InvalidArgument, "amplitude must be > 0");
  if (options.samples_per_period < 4) throw Error(ErrorKind::InvalidArgument, "samples_per_period must be >= 4");
  if (source != DispersionSource::LinearAcoustic && amplitude > 0.01 * params.rho0) {
    throw Error(ErrorKind::InvalidArgument, "amplitude must not exceed 0.01 rho0 for nonlinear sources");
  }
  const Grid1D grid(options.n_points, options.length);
  for (long j : modes) {
    if (j < 1 || static_cast<std::size_t>(j) >= grid.n_points() / 2) {
      throw Error(ErrorKind::InvalidArgument, "mode " + std::to_string(j) + " is not resolvable");
    }
  }
  return grid;
}

DispersionCurve run_modes(DispersionSource source, std::span<const long> modes,
                          const std::vector<double>& t_ends, double amplitude, const PhysParams& params,
                          double dt, const DispersionOptions& options) {
  DispersionCurve curve;
  curve.entries.resize(modes.size());
  std::vector<std::exception_ptr> errors(modes.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < modes.size(); i += stride) {
      try {
        curve.entries[i] = ModeRun{source, modes[i], amplitude, params, t_ends[i], dt, options}();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      options.parallel ? std::min<std::size_t>(modes.size(), std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return curve;
}

}  // namespace

DispersionCurve measure_dispersion(DispersionSource source, std::span<const long> modes,
                                   double amplitude, const PhysParams& params, double t_end,
                                   double dt, const DispersionOptions& options) {
  const Grid1D grid = checked_dispersion_grid(source, modes, amplitude, params, dt, options);
  double omega_min = std::numeric_limits<double>::infinity();
  for (long j : modes) {
    omega_min = std::min(omega_min, bogoliubov_omega(grid.wavenumber(static_cast<double>(j)), params));
  }
  const double needed = 5.0 * 2.0 * std::numbers::pi / omega_min;
  if (!(t_end >= needed * (1.0 - 1e-12))) {
    throw Error(ErrorKind::InvalidArgument, "t_end = " + std::to_string(t_end) +
                                                " covers fewer than 5 periods of the slowest mode (needs " +
                                                std::to_string(needed) + ")");
  }
  return run_modes(source, modes, std::vector<double>(modes.size(), t_end), amplitude, params, dt, options);
}

DispersionCurve measure_dispersion_periods(DispersionSource source, std::span<const long> modes,
                                           double amplitude, const PhysParams& params, double periods,
                                           double dt, const DispersionOptions& options) {
  const Grid1D grid = checked_dispersion_grid(source, modes, amplitude, params, dt, options);
  if (!(periods >= 5.0)) throw Error(ErrorKind::InvalidArgument, "periods must be >= 5");
  std::vector<double> t_ends;
  for (long j : modes) {
    const double omega = bogoliubov_omega(grid.wavenumber(static_cast<double>(j)), params);
    t_ends.push_back(periods * 2.0 * std::numbers::pi / omega);
  }
  return run_modes(source, modes, t_ends, amplitude, params, dt, options);
}

double dispersion_time_step(const PhysParams& params, double amplitude, std::span<const long> modes,
                            const DispersionOptions& options) {
  const Grid1D grid(options.n_points, options.length);
  const double dx = grid.spacing();
  // Bound the largest velocity and sound speed the perturbed state can reach.
  double u_max = 0.0;
  for (long j : modes) {
    const double k = grid.wavenumber(static_cast<double>(j));
    u_max = std::max(u_max, 2.0 * amplitude * bogoliubov_omega(k, params) / (params.rho0 * k));
  }
  const double c = std::sqrt(params.sound_speed_squared(params.rho0 + 2.0 * amplitude));
  double limit = (u_max + c) > 0.0 ? dx / (u_max + c) : std::numeric_limits<double>::infinity();
  if (params.hbar > 0.0) limit = std::min(limit, params.mass * dx * dx / (std::numbers::pi * params.hbar));
  return 0.99 * options.cfl_safety * limit;
}

void write_dispersion_csv(const std::filesystem::path& path, const DispersionCurve& curve) {
  CsvTable t;
  t.header = {"k", "omega_measured", "omega_analytic", "rel_err"};
  t.columns.assign(4, {});
  for (const auto& e : curve.entries) {
    t.columns[0].push_back(e.k);
    t.columns[1].push_back(e.omega_measured);
    t.columns[2].push_back(e.omega_analytic);
    t.columns[3].push_back(e.rel_err);
  }
  write_csv(path, t);
}

DispersionCurve read_dispersion_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  const auto& k = t.column("k");
  const auto& om = t.column("omega_measured");
  const auto& oa = t.column("omega_analytic");
  const auto& re = t.column("rel_err");
  DispersionCurve c;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    DispersionEntry e;
    e.k = k[i];
    e.omega_measured = om[i];
    e.omega_analytic = oa[i];
    e.rel_err = re[i];
    c.entries.push_back(e);
  }
  return c;
}

}  // namespace qhydro
