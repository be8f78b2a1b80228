#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhydro/acoustics.hpp"
#include "qhydro/hydro.hpp"
#include "qhydro/kinetic.hpp"

namespace qhydro {

enum class Engine { HydroPerfect, HydroGP, GpOracle, LinearAcoustic, Kinetic, Dispersion };

std::string_view to_string(Engine engine);

/// Named initial condition. Only the fields used by `preset` are read.
struct InitialSpec {
  /// uniform | single_mode | gaussian | trap_ground_state | maxwellian | cold_beam
  std::string preset = "uniform";
  long mode = 1;
  double amplitude = 0.0;
  ModeShape shape = ModeShape::Traveling;
  double center = 0.0;
  double sigma = 1.0;
  double k0 = 0.0;
  double beta = 2.0;
  std::optional<double> temperature;
  /// cold_beam: velocity width and velocity amplitude u(x) = velocity * sin(k_mode x)
  double width = 0.05;
  double velocity = 0.0;
};

struct PotentialSpec {
  /// none | harmonic | periodic_trap
  std::string type = "none";
  double omega = 1.0;
  double beta = 2.0;
  std::optional<double> center;
};

struct KineticSpec {
  std::size_t n_v = 128;
  double v_max = 4.0;
  VelocityAdvection v_advection = VelocityAdvection::Spectral;
  PressureConvention pressure = PressureConvention::OneD;
};

struct DispersionSpec {
  DispersionSource source = DispersionSource::NonlinearHydroGP;
  std::vector<long> modes{1, 2, 3, 4, 5, 6, 7, 8};
  double amplitude = 1e-3;
  /// Common run length; when absent each mode runs for `periods` of its own period.
  std::optional<double> t_end;
  double periods = 5.0;
  ModeShape shape = ModeShape::Traveling;
  bool parallel = true;
};

/// One experiment, parsed from a JSON document.
struct ExperimentConfig {
  std::string name = "experiment";
  Engine engine = Engine::HydroGP;
  std::size_t n_points = 256;
  double length = 6.283185307179586;
  PhysParams params;
  ClosureModel closure = Pressureless{};
  VacuumPolicy vacuum;
  DiffScheme scheme = DiffScheme::Spectral;
  QuantumForceForm force_form = QuantumForceForm::GradientOfPotential;
  StepControl step;
  /// dt = cfl_safety * stable limit of the initial state when not given.
  bool auto_dt = true;
  PotentialSpec potential;
  InitialSpec initial;
  KineticSpec kinetic;
  DispersionSpec dispersion;
  std::optional<double> n_total;
  double t_end = 1.0;
  std::size_t snapshot_every = 100;
  std::filesystem::path output = "out";
  /// The document the config was parsed from, re-serialized.
  std::string source_json;

  Grid1D grid() const { return Grid1D(n_points, length); }
  /// Particle number; defaults to rho0 L / m.
  double particles() const;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);
/// Throws MissingArtifact if the file is absent, ConfigError otherwise.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qhydro
