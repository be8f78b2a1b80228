#include "qhydro/error.hpp"

namespace qhydro {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::NegativeDensity: return "NegativeDensity";
    case ErrorKind::DivisionNearVacuum: return "DivisionNearVacuum";
    case ErrorKind::ClosureMismatch: return "ClosureMismatch";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NormDrift: return "NormDrift";
    case ErrorKind::PhaseWindingMismatch: return "PhaseWindingMismatch";
    case ErrorKind::FitFailed: return "FitFailed";
    case ErrorKind::CutoffBreach: return "CutoffBreach";
    case ErrorKind::InsufficientTrajectory: return "InsufficientTrajectory";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingArtifact: return "MissingArtifact";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qhydro
