#include "opcalc/error.hpp"

namespace opcalc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BranchCutViolation: return "BranchCutViolation";
    case ErrorKind::ContourInvalid: return "ContourInvalid";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace opcalc
