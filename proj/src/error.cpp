#include "blaschke/error.hpp"

namespace blaschke {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::NonPositiveArea: return "NonPositiveArea";
    case ErrorCode::DuplicateDirection: return "DuplicateDirection";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::OracleFailed: return "OracleFailed";
    case ErrorCode::PremiseViolated: return "PremiseViolated";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonConvexInput: return "NonConvexInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace blaschke
