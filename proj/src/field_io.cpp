#include "qhydro/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qhydro/error.hpp"

namespace qhydro {

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return columns[c];
  }
  throw Error(ErrorKind::MissingArtifact, "CSV has no column '" + name + "'");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (table.header.size() != table.columns.size()) {
    throw Error(ErrorKind::InvalidArgument, "CSV header/column count mismatch");
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingArtifact, "cannot write " + path.string());
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out << (c ? "," : "") << table.header[c];
  }
  out << '\n';
  const std::size_t rows = table.rows();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_number(table.columns[c][r]);
    }
    out << '\n';
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingArtifact, "cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ConfigError, path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  table.columns.resize(table.header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= table.columns.size()) break;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        throw Error(ErrorKind::ConfigError,
                    path.string() + ":" + std::to_string(lineno) + ": not a number '" + cell + "'");
      }
      table.columns[c++].push_back(v);
    }
    if (c != table.columns.size()) {
      throw Error(ErrorKind::ConfigError,
                  path.string() + ":" + std::to_string(lineno) + ": wrong number of cells");
    }
  }
  return table;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& field,
                     const std::string& name) {
  CsvTable t;
  t.header = {"x", name};
  std::vector<double> x(field.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = field.grid().x(i);
  t.columns = {std::move(x), field.data()};
  write_csv(path, t);
}

Grid1D grid_from_nodes(const std::vector<double>& x) {
  if (x.size() < 2) throw Error(ErrorKind::ConfigError, "too few grid nodes");
  const double dx = x[1] - x[0];
  return Grid1D(x.size(), dx * static_cast<double>(x.size()));
}

std::pair<std::string, ScalarField> read_field_csv(const std::filesystem::path& path) {
  CsvTable t = read_csv(path);
  if (t.header.size() != 2 || t.header[0] != "x") {
    throw Error(ErrorKind::ConfigError, path.string() + " is not an x,<name> field file");
  }
  Grid1D grid = grid_from_nodes(t.columns[0]);
  return {t.header[1], ScalarField(grid, t.columns[1])};
}

}  // namespace qhydro
