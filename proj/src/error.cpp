#include "expinterp/error.hpp"

namespace expinterp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DuplicatePoint: return "DUPLICATE_POINT";
    case ErrorCode::Unsatisfiable: return "UNSATISFIABLE";
    case ErrorCode::HorizonTooSmall: return "HORIZON_TOO_SMALL";
    case ErrorCode::ConditionsFail: return "CONDITIONS_FAIL";
    case ErrorCode::TargetNotInLambda: return "TARGET_NOT_IN_LAMBDA";
    case ErrorCode::Exhausted: return "EXHAUSTED";
    case ErrorCode::RadiiOutOfRange: return "RADII_OUT_OF_RANGE";
    case ErrorCode::NotFinite: return "NOT_FINITE";
    case ErrorCode::NoStabilization: return "NO_STABILIZATION";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::InsufficientExponents: return "INSUFFICIENT_EXPONENTS";
    case ErrorCode::DomainViolation: return "DOMAIN_VIOLATION";
    case ErrorCode::PreconditionMultidirection: return "PRECONDITION_MULTIDIRECTION";
    case ErrorCode::NodeOutsideDomain: return "NODE_OUTSIDE_DOMAIN";
    case ErrorCode::ExponentsNotOnRay: return "EXPONENTS_NOT_ON_RAY";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::PayloadMissing: return "PAYLOAD_MISSING";
    case ErrorCode::TheoryMismatch: return "THEORY_MISMATCH";
  }
  return "UNKNOWN";
}

}  // namespace expinterp
