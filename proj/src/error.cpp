#include "conedc/error.hpp"

namespace conedc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidPenalty: return "InvalidPenalty";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::InvalidFeasibleSet: return "InvalidFeasibleSet";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::SubproblemInfeasible: return "SubproblemInfeasible";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace conedc
