#include "qhydro/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "qhydro/error.hpp"
#include "qhydro/field_io.hpp"

namespace qhydro {

PhaseSpaceGrid::PhaseSpaceGrid(const Grid1D& x_grid, std::size_t n_v, double v_max)
    : x_grid_(x_grid), n_v_(n_v), v_max_(v_max) {
  if (n_v < 16 || n_v % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "n_v must be even and >= 16, got " + std::to_string(n_v));
  }
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw Error(ErrorKind::InvalidArgument, "v_max must be > 0");
}

PhaseSpaceState::PhaseSpaceState(const PhaseSpaceGrid& grid_, double time_)
    : grid(grid_), f(grid_.n_x() * grid_.n_v(), 0.0), time(time_) {}

PhaseSpaceState::PhaseSpaceState(const PhaseSpaceGrid& grid_, std::vector<double> f_, double time_)
    : grid(grid_), f(std::move(f_)), time(time_) {
  if (f.size() != grid.n_x() * grid.n_v()) {
    throw Error(ErrorKind::InvalidArgument, "distribution has " + std::to_string(f.size()) +
                                                " values, grid needs " +
                                                std::to_string(grid.n_x() * grid.n_v()));
  }
}

double PhaseSpaceState::total() const {
  double s = 0.0;
  for (double v : f) s += v;
  return s * grid.cell_area();
}

void PhaseSpaceState::normalize() {
  const double t = total();
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "distribution has no mass");
  for (double& v : f) v /= t;
}

std::string_view to_string(VelocityAdvection scheme) {
  switch (scheme) {
    case VelocityAdvection::Spectral: return "spectral";
    case VelocityAdvection::MonotoneCubic: return "monotone_cubic";
  }
  return "unknown";
}

VelocityAdvection parse_velocity_advection(std::string_view name) {
  if (name == "spectral") return VelocityAdvection::Spectral;
  if (name == "monotone_cubic") return VelocityAdvection::MonotoneCubic;
  throw Error(ErrorKind::InvalidArgument, "unknown velocity advection '" + std::string(name) + "'");
}

namespace {

void require_positive_total(double n_total) {
  if (!(n_total > 0.0) || !std::isfinite(n_total)) {
    throw Error(ErrorKind::InvalidArgument, "n_total must be > 0");
  }
}

// int f dv at every x node.
std::vector<double> velocity_integral(const PhaseSpaceState& s) {
  const std::size_t nx = s.grid.n_x();
  const std::size_t nv = s.grid.n_v();
  std::vector<double> out(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nv; ++j) acc += s.f[i * nv + j];
    out[i] = acc * s.grid.dv();
  }
  return out;
}

// Translation f(y) -> f(y - d) of a periodic line. The first value is removed
// beforehand so constant lines come back unchanged.
void shift_line(std::span<double> line, double d, double length) {
  const double offset = line[0];
  bool constant = true;
  for (double v : line) constant = constant && v == offset;
  if (constant) return;
  for (double& v : line) v -= offset;
  kernels::shift(line, d, length);
  for (double& v : line) v += offset;
}

// Monotone cubic Hermite interpolation of y (zero outside the grid) at
// fractional index p, with Fritsch-Butland slopes.
double monotone_cubic(std::span<const double> y, double p) {
  const long n = static_cast<long>(y.size());
  auto at = [&](long k) { return k < 0 || k >= n ? 0.0 : y[static_cast<std::size_t>(k)]; };
  auto slope = [&](long k) {
    const double a = at(k) - at(k - 1);
    const double b = at(k + 1) - at(k);
    if (a * b <= 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
  };
  const double fl = std::floor(p);
  const long k = static_cast<long>(fl);
  if (k < -1 || k >= n) return 0.0;
  const double t = p - fl;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * at(k) + (t3 - 2.0 * t2 + t) * slope(k) +
         (-2.0 * t3 + 3.0 * t2) * at(k + 1) + (t3 - t2) * slope(k + 1);
}

void advect_x(PhaseSpaceState& s, double dt, std::vector<double>& column) {
  const std::size_t nx = s.grid.n_x();
  const std::size_t nv = s.grid.n_v();
  const double L = s.grid.x_grid().length();
  column.resize(nx);
  for (std::size_t j = 0; j < nv; ++j) {
    for (std::size_t i = 0; i < nx; ++i) column[i] = s.f[i * nv + j];
    shift_line(column, s.grid.v(j) * dt, L);
    for (std::size_t i = 0; i < nx; ++i) s.f[i * nv + j] = column[i];
  }
}

void advect_v(PhaseSpaceState& s, const ScalarField& accel, double dt, VelocityAdvection scheme,
              std::vector<double>& row) {
  const std::size_t nx = s.grid.n_x();
  const std::size_t nv = s.grid.n_v();
  const double dv = s.grid.dv();
  row.resize(nv);
  for (std::size_t i = 0; i < nx; ++i) {
    const double d = accel[i] * dt;
    if (d == 0.0) continue;
    std::span<double> line(s.f.data() + i * nv, nv);
    if (scheme == VelocityAdvection::Spectral) {
      kernels::shift(line, d, 2.0 * s.grid.v_max());
    } else {
      std::copy(line.begin(), line.end(), row.begin());
      for (std::size_t j = 0; j < nv; ++j) line[j] = monotone_cubic(row, static_cast<double>(j) - d / dv);
    }
  }
}

double boundary_fraction(const PhaseSpaceState& s) {
  const std::size_t nx = s.grid.n_x();
  const std::size_t nv = s.grid.n_v();
  const double cut = 0.9 * s.grid.v_max();
  double outer = 0.0, all = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double v = s.f[i * nv + j];
      all += v;
      if (std::abs(s.grid.v(j)) > cut) outer += v;
    }
  }
  return all > 0.0 ? outer / all : 0.0;
}

}  // namespace

ScalarField kinetic_acceleration(const PhaseSpaceState& state, const PhysParams& params,
                                 const ExternalPotential& vext, double n_total,
                                 const KineticOptions& options) {
  require_positive_total(n_total);
  const Grid1D& g = state.grid.x_grid();
  require_same_grid(g, vext.values().grid(), "external potential");
  const std::vector<double> nf = velocity_integral(state);
  ScalarField rho(g);
  for (std::size_t i = 0; i < nf.size(); ++i) rho[i] = params.mass * n_total * nf[i];
  ScalarField a(g);
  kernels::quantum_acceleration(rho.values(), options.vacuum.floor_for(rho), params,
                                options.force_scheme, options.force_form, g.length(), a.values());
  if (!vext.is_zero()) {
    const ScalarField dv = vext.gradient(options.force_scheme);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= dv[i] / params.mass;
  }
  return a;
}

double kinetic_max_dt(const PhaseSpaceState& state, const PhysParams& params,
                      const ExternalPotential& vext, double n_total, const KineticOptions& options) {
  const double amax = kinetic_acceleration(state, params, vext, n_total, options).max_abs();
  const double dx = state.grid.x_grid().spacing();
  double dt = dx / state.grid.v_max();
  if (amax > 0.0) dt = std::min(dt, state.grid.dv() / amax);
  // The Bohm force feeds density back into the kick; beyond the quantum-dispersion
  // limit the split scheme amplifies short-wave density noise.
  if (params.hbar > 0.0) dt = std::min(dt, params.mass * dx * dx / (std::numbers::pi * params.hbar));
  return dt;
}

PhaseSpaceState liouville_step(const PhaseSpaceState& state, const PhysParams& params,
                               const ExternalPotential& vext, double n_total, double dt,
                               const KineticOptions& options, KineticStepReport* report) {
  params.validate();
  require_positive_total(n_total);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  for (double v : state.f) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteInput, "distribution has a non-finite value");
    if (v < -1e-12) throw Error(ErrorKind::InvalidArgument, "distribution has a negative value");
  }
  const double total = state.total();
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorKind::InvalidArgument, "distribution is not normalized (total " + std::to_string(total) + ")");
  }
  const double limit = kinetic_max_dt(state, params, vext, n_total, options);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::CflViolation,
                "dt = " + std::to_string(dt) + " exceeds the stability limit " + std::to_string(limit));
  }

  thread_local std::vector<double> line;
  PhaseSpaceState out = state;
  advect_x(out, 0.5 * dt, line);
  const ScalarField accel = kinetic_acceleration(out, params, vext, n_total, options);
  advect_v(out, accel, dt, options.v_advection, line);
  advect_x(out, 0.5 * dt, line);
  out.time = state.time + dt;

  double clipped = 0.0;
  for (double& v : out.f) {
    if (v < 0.0) {
      clipped -= v;
      v = 0.0;
    }
  }
  clipped *= out.grid.cell_area();
  const double edge = boundary_fraction(out);
  if (report) {
    report->clipped_mass = clipped;
    report->boundary_fraction = edge;
  }
  if (edge > options.cutoff_tolerance) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "mass fraction %.3e beyond 0.9 v_max exceeds %.3e", edge,
                  options.cutoff_tolerance);
    throw Error(ErrorKind::CutoffBreach, msg);
  }
  return out;
}

KineticMoments moments(const PhaseSpaceState& state, const PhysParams& params, double n_total,
                       PressureConvention convention, const VacuumPolicy& vacuum) {
  require_positive_total(n_total);
  const Grid1D& g = state.grid.x_grid();
  const std::size_t nx = state.grid.n_x();
  const std::size_t nv = state.grid.n_v();
  const double dv = state.grid.dv();
  const double nm = n_total * params.mass;
  const double factor = convention == PressureConvention::OneD ? 1.0 : 1.0 / 3.0;
  if (!(params.boltzmann > 0.0)) throw Error(ErrorKind::InvalidArgument, "boltzmann must be > 0 for moments");

  KineticMoments m{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  const std::vector<double> n0 = velocity_integral(state);
  const double nmax = *std::max_element(n0.begin(), n0.end());
  const double floor = vacuum.relative ? vacuum.epsilon * nmax : vacuum.epsilon;
  for (std::size_t i = 0; i < nx; ++i) {
    if (!(n0[i] > floor) || n0[i] <= 0.0) {
      throw Error(ErrorKind::DivisionNearVacuum, "int f dv vanishes at x = " + std::to_string(g.x(i)));
    }
    const double* row = state.f.data() + i * nv;
    double s1 = 0.0;
    for (std::size_t j = 0; j < nv; ++j) s1 += state.grid.v(j) * row[j];
    const double u = s1 * dv / n0[i];
    double s2 = 0.0, s3 = 0.0;
    for (std::size_t j = 0; j < nv; ++j) {
      const double c = state.grid.v(j) - u;
      s2 += c * c * row[j];
      s3 += c * c * c * row[j];
    }
    m.rho[i] = nm * n0[i];
    m.u[i] = u;
    m.p[i] = factor * nm * s2 * dv;
    m.q[i] = 0.5 * nm * s3 * dv;
    m.temp[i] = m.p[i] / (n_total * n0[i] * params.boltzmann);
  }
  return m;
}

MomentResidualReport moment_residuals(std::span<const PhaseSpaceState> trajectory,
                                      const PhysParams& params, double n_total,
                                      const ExternalPotential& vext, PressureConvention convention,
                                      const KineticOptions& options) {
  if (trajectory.size() < 3) {
    throw Error(ErrorKind::InsufficientTrajectory,
                "moment residuals need at least 3 states, got " + std::to_string(trajectory.size()));
  }
  std::vector<KineticMoments> mom;
  mom.reserve(trajectory.size());
  for (const auto& s : trajectory) mom.push_back(moments(s, params, n_total, convention, options.vacuum));

  const DiffScheme sch = options.force_scheme;
  const Grid1D& g = trajectory.front().grid.x_grid();
  const double third = convention == PressureConvention::OneD ? 1.0 : 1.0 / 3.0;
  const ScalarField dV = vext.is_zero() ? ScalarField(g) : vext.gradient(sch);

  MomentResidualReport rep;
  for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
    const double h = trajectory[k + 1].time - trajectory[k - 1].time;
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "trajectory times must increase");
    const KineticMoments& a = mom[k - 1];
    const KineticMoments& c = mom[k];
    const KineticMoments& b = mom[k + 1];

    const ScalarField flux_x = gradient(hadamard(c.rho, c.u), sch);
    const ScalarField u_x = gradient(c.u, sch);
    const ScalarField p_x = gradient(c.p, sch);
    const ScalarField T_x = gradient(c.temp, sch);
    const ScalarField q_x = gradient(c.q, sch);
    const ScalarField Tu_x = gradient(hadamard(c.temp, c.u), sch);
    const ScalarField fq = quantum_force(c.rho, params, options.vacuum, sch, options.force_form);

    for (std::size_t i = 0; i < g.n_points(); ++i) {
      const double rho_t = (b.rho[i] - a.rho[i]) / h;
      const double u_t = (b.u[i] - a.u[i]) / h;
      const double T_t = (b.temp[i] - a.temp[i]) / h;
      const double n = c.rho[i] / params.mass;
      const double nk = n * params.boltzmann;

      rep.continuity = std::max(rep.continuity, std::abs(rho_t + flux_x[i]));
      const double r_mom = u_t + c.u[i] * u_x[i] + p_x[i] / c.rho[i] + dV[i] / params.mass - fq[i];
      rep.momentum = std::max(rep.momentum, std::abs(r_mom));
      // P_t + (u P)' + 2 P u' + (2 q)' = 0 with P = N m int dv^2 f dv, divided by n kappa / c
      const double r_heat =
          T_t + c.u[i] * T_x[i] + 2.0 * c.temp[i] * u_x[i] + 2.0 * third * q_x[i] / nk;
      rep.heat = std::max(rep.heat, std::abs(r_heat));
      const double r_pf = T_t + Tu_x[i] + 2.0 / 3.0 * q_x[i] / nk;
      rep.heat_perfect_fluid = std::max(rep.heat_perfect_fluid, std::abs(r_pf));
    }
    ++rep.samples;
  }
  return rep;
}

PhaseSpaceState gaussian_velocity_state(const PhaseSpaceGrid& grid,
                                        const std::function<double(double)>& density,
                                        const std::function<double(double)>& velocity,
                                        double sigma_v) {
  if (!(sigma_v > 0.0)) throw Error(ErrorKind::InvalidArgument, "velocity width must be > 0");
  PhaseSpaceState s(grid);
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    const double x = grid.x_grid().x(i);
    const double n = density(x);
    const double u = velocity(x);
    if (!(n >= 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidArgument, "density profile must be >= 0");
    for (std::size_t j = 0; j < grid.n_v(); ++j) {
      const double c = (grid.v(j) - u) / sigma_v;
      s.at(i, j) = n * std::exp(-0.5 * c * c);
    }
  }
  s.normalize();
  return s;
}

PhaseSpaceState maxwellian_state(const PhaseSpaceGrid& grid, const PhysParams& params, double T0) {
  if (!(T0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "temperature must be > 0");
  const double sigma = std::sqrt(params.boltzmann * T0 / params.mass);
  return gaussian_velocity_state(grid, [](double) { return 1.0; }, [](double) { return 0.0; }, sigma);
}

PhaseSpaceState cold_beam_state(const PhaseSpaceGrid& grid,
                                const std::function<double(double)>& density,
                                const std::function<double(double)>& velocity, double eps) {
  return gaussian_velocity_state(grid, density, velocity, eps);
}

void write_phase_space_csv(const std::filesystem::path& path, const PhaseSpaceState& state) {
  CsvTable t;
  t.header = {"x", "v", "f"};
  t.columns.assign(3, {});
  for (std::size_t i = 0; i < state.grid.n_x(); ++i) {
    for (std::size_t j = 0; j < state.grid.n_v(); ++j) {
      t.columns[0].push_back(state.grid.x_grid().x(i));
      t.columns[1].push_back(state.grid.v(j));
      t.columns[2].push_back(state.at(i, j));
    }
  }
  write_csv(path, t);
}

PhaseSpaceState read_phase_space_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  const auto& x = t.column("x");
  const auto& v = t.column("v");
  const auto& f = t.column("f");
  // row-major: v varies fastest, so the first run of equal x gives n_v
  std::size_t nv = 0;
  while (nv < x.size() && x[nv] == x[0]) ++nv;
  if (nv == 0 || x.size() % nv != 0) throw Error(ErrorKind::ConfigError, "phase-space CSV is not a full grid");
  const std::size_t nx = x.size() / nv;
  std::vector<double> xs(nx);
  for (std::size_t i = 0; i < nx; ++i) xs[i] = x[i * nv];
  const double dv = v[1] - v[0];
  const double vmax = 0.5 * dv * static_cast<double>(nv);
  PhaseSpaceGrid grid(grid_from_nodes(xs), nv, vmax);
  return PhaseSpaceState(grid, f);
}

}  // namespace qhydro
