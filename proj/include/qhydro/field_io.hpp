#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qhydro/field.hpp"

namespace qhydro {

/// Column-oriented numeric CSV with a single header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws MissingArtifact if no column has this name.
  const std::vector<double>& column(const std::string& name) const;
};

/// Formats with 17 significant digits so doubles round-trip exactly.
std::string format_number(double v);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Throws MissingArtifact if the file is absent, ConfigError if it does not parse.
CsvTable read_csv(const std::filesystem::path& path);

/// Two-column `x,<name>` file, one row per grid node.
void write_field_csv(const std::filesystem::path& path, const ScalarField& field,
                     const std::string& name);
/// Reads a `x,<name>` file back; the grid is rebuilt from the x column.
std::pair<std::string, ScalarField> read_field_csv(const std::filesystem::path& path);

/// Rebuilds a Grid1D from node coordinates x_i = i*dx.
Grid1D grid_from_nodes(const std::vector<double>& x);

}  // namespace qhydro
