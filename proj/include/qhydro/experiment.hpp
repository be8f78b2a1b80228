#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qhydro/acoustics.hpp"
#include "qhydro/config.hpp"

namespace qhydro {

/// What run_experiment left on disk.
struct RunSummary {
  std::filesystem::path directory;
  std::size_t snapshots = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
  std::optional<DispersionCurve> dispersion;
};

/// Record directory for a config: `output` resolved against $QHYDRO_OUT when set
/// (relative paths only), otherwise against the working directory.
std::filesystem::path record_directory(const ExperimentConfig& config);

/// Runs the configured engine and writes manifest.json, series.csv, snapshot CSVs,
/// dispersion.csv (dispersion engine) and gnuplot scripts into record_directory().
/// Solver errors propagate unchanged.
RunSummary run_experiment(const ExperimentConfig& config);

/// (Re)writes gnuplot scripts for a record directory and returns their paths.
/// Throws MissingArtifact when the manifest or a referenced CSV is absent, or the
/// record holds neither snapshots nor dispersion results.
std::vector<std::filesystem::path> write_plot_scripts(const std::filesystem::path& record_dir);

}  // namespace qhydro
