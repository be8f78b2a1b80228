#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhydro {

/// Failure categories raised by the solvers. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidArgument,
  NonFiniteInput,
  NegativeDensity,
  DivisionNearVacuum,
  ClosureMismatch,
  CflViolation,
  BlowUp,
  NormDrift,
  PhaseWindingMismatch,
  FitFailed,
  CutoffBreach,
  InsufficientTrajectory,
  ConfigError,
  MissingArtifact,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qhydro
