#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blaschke {

enum class ErrorCode {
  UnboundedRegion,
  DegenerateBody,
  NonPositiveArea,
  DuplicateDirection,
  RankDeficient,
  ClosureViolation,
  NonPositiveScale,
  GenerationFailed,
  DegenerateAngle,
  StepSizeUnderflow,
  NewtonDivergence,
  OracleFailed,
  PremiseViolated,
  InvalidPolygon,
  ParseError,
  NonConvexInput,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blaschke
