#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qhydro {

enum class VerifySuite { Quick, Full };

VerifySuite parse_verify_suite(std::string_view name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the built-in property checks. `quick` covers identities and short runs;
/// `full` adds the dispersion reproduction, the wavefunction/hydro equivalence run,
/// stationarity and the kinetic refinement study. Each result line is also
/// written to `log` when given.
std::vector<CheckResult> run_verification(VerifySuite suite, std::ostream* log = nullptr);

}  // namespace qhydro
