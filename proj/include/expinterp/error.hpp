#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expinterp {

enum class ErrorCode {
  InvalidArgument,
  DuplicatePoint,
  Unsatisfiable,
  HorizonTooSmall,
  ConditionsFail,
  TargetNotInLambda,
  Exhausted,
  RadiiOutOfRange,
  NotFinite,
  NoStabilization,
  Overflow,
  SearchExhausted,
  InsufficientExponents,
  DomainViolation,
  PreconditionMultidirection,
  NodeOutsideDomain,
  ExponentsNotOnRay,
  SchemaError,
  PayloadMissing,
  TheoryMismatch,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expinterp
