#include "qhydro/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qhydro/error.hpp"
#include "qhydro/field_io.hpp"
#include "qhydro/gp_oracle.hpp"
#include "qhydro/kinetic.hpp"
#include "qhydro/presets.hpp"

#ifndef QHYDRO_VERSION
#define QHYDRO_VERSION "unknown"
#endif

namespace qhydro {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string snapshot_name(const char* stem, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshots/%s_%05zu.csv", stem, index);
  return buf;
}

[[noreturn]] void preset_mismatch(const ExperimentConfig& c) {
  throw Error(ErrorKind::ConfigError, "field 'initial.preset' value '" + c.initial.preset +
                                          "' does not apply to engine " + std::string(to_string(c.engine)));
}

ExternalPotential build_potential(const ExperimentConfig& c, const Grid1D& grid) {
  const double center = c.potential.center.value_or(0.5 * grid.length());
  if (c.potential.type == "harmonic") return ExternalPotential::harmonic(grid, c.params, c.potential.omega, center);
  if (c.potential.type == "periodic_trap") {
    return ExternalPotential::periodic_trap(grid, c.params, c.potential.beta, center);
  }
  return ExternalPotential::none(grid);
}

FluidState build_fluid(const ExperimentConfig& c, const Grid1D& grid) {
  const InitialSpec& ic = c.initial;
  if (ic.preset == "uniform") return presets::uniform(grid, c.params, ic.temperature);
  if (ic.preset == "single_mode") {
    return presets::single_mode(grid, c.params, ic.mode, ic.amplitude, ic.shape, ic.temperature);
  }
  if (ic.preset == "gaussian") {
    FluidState s = presets::gaussian(grid, c.params, ic.center, ic.sigma, ic.k0);
    if (ic.temperature) s.temp = ScalarField(grid, *ic.temperature);
    return s;
  }
  if (ic.preset == "trap_ground_state") {
    FluidState s = presets::periodic_trap_ground_state(grid, c.params, ic.beta,
                                                       c.potential.center.value_or(0.5 * grid.length()));
    if (ic.temperature) s.temp = ScalarField(grid, *ic.temperature);
    return s;
  }
  preset_mismatch(c);
}

PhaseSpaceState build_phase_space(const ExperimentConfig& c, const PhaseSpaceGrid& grid) {
  const InitialSpec& ic = c.initial;
  const double k = grid.x_grid().wavenumber(static_cast<double>(ic.mode));
  auto density = [&](double x) { return 1.0 + ic.amplitude * std::cos(k * x); };
  if (std::abs(ic.amplitude) >= 1.0) {
    throw Error(ErrorKind::ConfigError, "field 'initial.amplitude' must be below 1 for phase-space presets");
  }
  if (ic.preset == "maxwellian") {
    const double sigma = std::sqrt(c.params.boltzmann * *ic.temperature / c.params.mass);
    return gaussian_velocity_state(grid, density, [](double) { return 0.0; }, sigma);
  }
  if (ic.preset == "cold_beam") {
    return cold_beam_state(grid, density, [&](double x) { return ic.velocity * std::sin(k * x); }, ic.width);
  }
  preset_mismatch(c);
}

void write_hydro_snapshot(const fs::path& path, const FluidState& s) {
  CsvTable t;
  t.header = {"x", "rho", "u"};
  std::vector<double> x(s.rho.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = s.grid().x(i);
  t.columns = {x, s.rho.data(), s.u.data()};
  if (s.temp) {
    t.header.push_back("temp");
    t.columns.push_back(s.temp->data());
  }
  write_csv(path, t);
}

struct Recorder {
  fs::path dir;
  json index = json::array();
  CsvTable series;

  void snapshot(std::size_t i, double time, const std::string& file) {
    index.push_back({{"index", i}, {"time", time}, {"file", file}});
  }
  void sample(std::initializer_list<double> row) {
    std::size_t k = 0;
    for (double v : row) series.columns[k++].push_back(v);
  }
};

std::size_t step_count(double t_end, double dt) {
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

void run_hydro(const ExperimentConfig& c, Recorder& rec, json& extra) {
  const Grid1D grid = c.grid();
  HydroSystem sys;
  sys.model = c.engine == Engine::HydroPerfect ? FluidModel::Perfect : FluidModel::GrossPitaevskii;
  sys.params = c.params;
  sys.closure = c.closure;
  sys.scheme = c.scheme;
  sys.vacuum = c.vacuum;
  sys.force_form = c.force_form;
  if (c.potential.type != "none") sys.vext = build_potential(c, grid);
  const FluidState init = build_fluid(c, grid);

  StepControl control = c.step;
  if (c.auto_dt) control.dt = 0.9 * control.cfl_safety * max_stable_dt(init, sys);

  rec.series.header = {"time", "mass", "momentum"};
  rec.series.columns.assign(3, {});
  std::size_t written = 0;
  auto keep = [&](const FluidState& s) {
    const std::string file = snapshot_name("snap", written);
    write_hydro_snapshot(rec.dir / file, s);
    rec.snapshot(written++, s.time, file);
    rec.sample({s.time, s.mass(), s.momentum()});
  };
  keep(init);
  const std::size_t n_steps = step_count(c.t_end, control.dt);
  const SimulationRecord r = run_simulation(init, sys, control, c.t_end, c.snapshot_every,
                                            [&](const FluidState& s, std::size_t k) {
                                              if (k % c.snapshot_every == 0 || k == n_steps) keep(s);
                                            });
  extra["dt"] = control.dt;
  extra["steps"] = r.steps;
  extra["max_mass_drift"] = r.max_mass_drift;
  extra["max_momentum_drift"] = r.max_momentum_drift;
}

void run_gp(const ExperimentConfig& c, Recorder& rec, json& extra) {
  const Grid1D grid = c.grid();
  const double n_total = c.particles();
  const ExternalPotential vext = build_potential(c, grid);
  WaveFunction wf = madelung_compose(build_fluid(c, grid), c.params, n_total);
  double dt = c.step.dt;
  if (c.auto_dt) {
    const double dx = grid.spacing();
    dt = c.step.cfl_safety * c.params.mass * dx * dx / (std::numbers::pi * c.params.hbar);
  }
  const std::size_t n_steps = step_count(c.t_end, dt);
  dt = n_steps > 0 ? c.t_end / static_cast<double>(n_steps) : dt;
  GpPropagator prop(grid, c.params, vext, n_total, dt);

  rec.series.header = {"time", "norm", "energy", "mass", "momentum"};
  rec.series.columns.assign(5, {});
  std::size_t written = 0;
  auto keep = [&] {
    const std::string file = snapshot_name("psi", written);
    CsvTable t;
    t.header = {"x", "re_psi", "im_psi", "density"};
    t.columns.assign(4, {});
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
      t.columns[0].push_back(grid.x(i));
      t.columns[1].push_back(wf.psi[i].real());
      t.columns[2].push_back(wf.psi[i].imag());
      t.columns[3].push_back(c.params.mass * n_total * std::norm(wf.psi[i]));
    }
    write_csv(rec.dir / file, t);
    rec.snapshot(written++, wf.time, file);
    const FluidState fl = madelung_decompose(wf, c.params, n_total, c.vacuum);
    rec.sample({wf.time, wf.norm(), gp_energy(wf, c.params, vext, n_total), fl.mass(), fl.momentum()});
  };
  keep();
  for (std::size_t k = 1; k <= n_steps; ++k) {
    prop.step(wf);
    wf.time = static_cast<double>(k) * dt;
    if (k % c.snapshot_every == 0 || k == n_steps) keep();
  }
  extra["dt"] = dt;
  extra["steps"] = n_steps;
}

void run_linear(const ExperimentConfig& c, Recorder& rec, json& extra, std::vector<std::string>& warnings) {
  const Grid1D grid = c.grid();
  const FluidState init = build_fluid(c, grid);
  AcousticState s{init.rho - ScalarField(grid, c.params.rho0), init.u, 0.0};
  double dt = c.auto_dt ? 0.9 * c.step.cfl_safety * acoustic_max_dt(grid, c.params) : c.step.dt;
  if (!std::isfinite(dt)) throw Error(ErrorKind::ConfigError, "field 'step.dt' is required when c_s = 0 and hbar = 0");
  const std::size_t n_steps = step_count(c.t_end, dt);
  dt = n_steps > 0 ? c.t_end / static_cast<double>(n_steps) : dt;

  rec.series.header = {"time", "energy"};
  rec.series.columns.assign(2, {});
  bool warned = false;
  std::size_t written = 0;
  auto keep = [&] {
    const std::string file = snapshot_name("acoustic", written);
    CsvTable t;
    t.header = {"x", "rho1", "u1"};
    std::vector<double> x(grid.n_points());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = grid.x(i);
    t.columns = {x, s.rho1.data(), s.u1.data()};
    write_csv(rec.dir / file, t);
    rec.snapshot(written++, s.time, file);
    rec.sample({s.time, acoustic_energy(s, c.params, c.scheme)});
  };
  keep();
  for (std::size_t k = 1; k <= n_steps; ++k) {
    s = acoustic_step(s, c.params, dt, c.scheme);
    if (!warned && !in_linear_regime(s, c.params)) {
      warnings.push_back("density perturbation exceeds 5% of rho0 at t = " + std::to_string(s.time));
      warned = true;
    }
    if (k % c.snapshot_every == 0 || k == n_steps) keep();
  }
  extra["dt"] = dt;
  extra["steps"] = n_steps;
}

void run_kinetic(const ExperimentConfig& c, Recorder& rec, json& extra) {
  const PhaseSpaceGrid grid(c.grid(), c.kinetic.n_v, c.kinetic.v_max);
  const double n_total = c.particles();
  const ExternalPotential vext = build_potential(c, grid.x_grid());
  KineticOptions opt;
  opt.v_advection = c.kinetic.v_advection;
  opt.force_scheme = c.scheme;
  opt.force_form = c.force_form;
  opt.vacuum = c.vacuum;
  PhaseSpaceState s = build_phase_space(c, grid);
  double dt = c.auto_dt ? 0.9 * c.step.cfl_safety * kinetic_max_dt(s, c.params, vext, n_total, opt) : c.step.dt;
  const std::size_t n_steps = step_count(c.t_end, dt);
  dt = n_steps > 0 ? c.t_end / static_cast<double>(n_steps) : dt;

  rec.series.header = {"time", "total", "clipped_mass", "boundary_fraction"};
  rec.series.columns.assign(4, {});
  std::size_t written = 0;
  KineticStepReport report;
  auto keep = [&] {
    const std::string file = snapshot_name("phase", written);
    write_phase_space_csv(rec.dir / file, s);
    const KineticMoments m = moments(s, c.params, n_total, c.kinetic.pressure, c.vacuum);
    const std::string mfile = snapshot_name("moments", written);
    write_hydro_snapshot(rec.dir / mfile, FluidState(m.rho, m.u, m.temp, s.time));
    rec.index.push_back({{"index", written}, {"time", s.time}, {"file", mfile}, {"phase_space", file}});
    ++written;
    rec.sample({s.time, s.total(), report.clipped_mass, report.boundary_fraction});
  };
  keep();
  std::deque<PhaseSpaceState> recent{s};
  for (std::size_t k = 1; k <= n_steps; ++k) {
    s = liouville_step(s, c.params, vext, n_total, dt, opt, &report);
    recent.push_back(s);
    if (recent.size() > 3) recent.pop_front();
    if (k % c.snapshot_every == 0 || k == n_steps) keep();
  }
  extra["dt"] = dt;
  extra["steps"] = n_steps;
  if (recent.size() == 3) {
    const std::vector<PhaseSpaceState> traj(recent.begin(), recent.end());
    const MomentResidualReport r = moment_residuals(traj, c.params, n_total, vext, c.kinetic.pressure, opt);
    extra["moment_residuals"] = {{"continuity", r.continuity},
                                 {"momentum", r.momentum},
                                 {"heat", r.heat},
                                 {"heat_perfect_fluid", r.heat_perfect_fluid}};
  }
}

DispersionCurve run_dispersion(const ExperimentConfig& c, json& extra) {
  DispersionOptions opt;
  opt.n_points = c.n_points;
  opt.length = c.length;
  opt.shape = c.dispersion.shape;
  opt.scheme = c.scheme;
  opt.cfl_safety = c.step.cfl_safety;
  opt.parallel = c.dispersion.parallel;
  const auto& modes = c.dispersion.modes;
  const double dt = c.auto_dt ? dispersion_time_step(c.params, c.dispersion.amplitude, modes, opt) : c.step.dt;
  extra["dt"] = dt;
  if (c.dispersion.t_end) {
    return measure_dispersion(c.dispersion.source, modes, c.dispersion.amplitude, c.params,
                              *c.dispersion.t_end, dt, opt);
  }
  return measure_dispersion_periods(c.dispersion.source, modes, c.dispersion.amplitude, c.params,
                                    c.dispersion.periods, dt, opt);
}

std::string fmt(double v) { return format_number(v); }

json read_manifest(const fs::path& dir) {
  const fs::path p = dir / "manifest.json";
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::MissingArtifact, "no manifest.json in " + dir.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MissingArtifact, "manifest.json in " + dir.string() + " does not parse: " + e.what());
  }
}

}  // namespace

fs::path record_directory(const ExperimentConfig& config) {
  if (config.output.is_absolute()) return config.output;
  if (const char* root = std::getenv("QHYDRO_OUT"); root && *root) return fs::path(root) / config.output;
  return config.output;
}

RunSummary run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.directory = record_directory(config);
  fs::create_directories(summary.directory / "snapshots");

  Recorder rec;
  rec.dir = summary.directory;
  json extra = json::object();
  switch (config.engine) {
    case Engine::HydroPerfect:
    case Engine::HydroGP: run_hydro(config, rec, extra); break;
    case Engine::GpOracle: run_gp(config, rec, extra); break;
    case Engine::LinearAcoustic: run_linear(config, rec, extra, summary.warnings); break;
    case Engine::Kinetic: run_kinetic(config, rec, extra); break;
    case Engine::Dispersion: {
      summary.dispersion = run_dispersion(config, extra);
      write_dispersion_csv(summary.directory / "dispersion.csv", *summary.dispersion);
      extra["max_rel_err"] = summary.dispersion->max_rel_err();
      break;
    }
  }
  if (!rec.series.header.empty()) write_csv(summary.directory / "series.csv", rec.series);
  summary.snapshots = rec.index.size();
  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest = {
      {"name", config.name},
      {"engine", std::string(to_string(config.engine))},
      {"code_version", QHYDRO_VERSION},
      {"wall_time_seconds", summary.wall_seconds},
      {"config", json::parse(config.source_json)},
      {"params",
       {{"hbar", config.params.hbar},
        {"mass", config.params.mass},
        {"scatter_len", config.params.scatter_len},
        {"rho0", config.params.rho0}}},
      {"snapshots", rec.index},
      {"results", extra},
      {"warnings", summary.warnings},
  };
  if (!rec.series.header.empty()) manifest["series"] = "series.csv";
  if (summary.dispersion) manifest["dispersion"] = "dispersion.csv";
  {
    std::ofstream out(summary.directory / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  write_plot_scripts(summary.directory);
  return summary;
}

std::vector<fs::path> write_plot_scripts(const fs::path& record_dir) {
  const json manifest = read_manifest(record_dir);
  std::vector<fs::path> written;
  const json snaps = manifest.value("snapshots", json::array());
  const bool has_dispersion = manifest.contains("dispersion");
  if (snaps.empty() && !has_dispersion) {
    throw Error(ErrorKind::MissingArtifact, "record " + record_dir.string() + " has no snapshots or dispersion results");
  }

  if (!snaps.empty()) {
    std::ostringstream gp;
    gp << "# space-time density; run with: gnuplot -p density.gp\n"
       << "set datafile separator ','\n"
       << "set xlabel 'x'\nset ylabel 't'\nset zlabel 'density'\n"
       << "set hidden3d\n"
       << "splot \\\n";
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      const std::string file = snaps[i].at("file").get<std::string>();
      if (!fs::exists(record_dir / file)) throw Error(ErrorKind::MissingArtifact, "missing snapshot " + file);
      const double t = snaps[i].at("time").get<double>();
      gp << "  '" << file << "' using 1:(" << fmt(t) << "):2 with lines notitle"
         << (i + 1 < snaps.size() ? ", \\\n" : "\n");
    }
    std::ofstream(record_dir / "density.gp") << gp.str();
    written.push_back(record_dir / "density.gp");
  }

  if (has_dispersion) {
    const std::string file = manifest.at("dispersion").get<std::string>();
    if (!fs::exists(record_dir / file)) throw Error(ErrorKind::MissingArtifact, "missing " + file);
    const json& p = manifest.at("params");
    const double hbar = p.at("hbar").get<double>();
    const double m = p.at("mass").get<double>();
    const double a = p.at("scatter_len").get<double>();
    const double rho0 = p.at("rho0").get<double>();
    std::ostringstream gp;
    gp << "# measured omega(k) against the Bogoliubov law; run with: gnuplot -p dispersion.gp\n"
       << "set datafile separator ','\n"
       << "hbar = " << fmt(hbar) << "\nm = " << fmt(m) << "\na = " << fmt(a) << "\nrho0 = " << fmt(rho0) << "\n"
       << "c2 = 4*pi*hbar**2*a*rho0/m**3\n"
       << "omega(k) = sqrt(c2*k**2 + (hbar*k**2/(2*m))**2)\n"
       << "set xlabel 'k'\nset ylabel 'omega'\nset key left top\n"
       << "set xrange [0:*]\n"
       << "plot omega(x) with lines title 'Bogoliubov', \\\n"
       << "  '" << file << "' using 1:2 skip 1 with points pt 7 title 'measured'\n";
    std::ofstream(record_dir / "dispersion.gp") << gp.str();
    written.push_back(record_dir / "dispersion.gp");
  }
  return written;
}

}  // namespace qhydro
