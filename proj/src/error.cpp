#include "normspace/error.hpp"

namespace normspace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NonPositiveOffDiagonal: return "NonPositiveOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::AnchorNotInDomain: return "AnchorNotInDomain";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroCenter: return "ZeroCenter";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::MembershipViolation: return "MembershipViolation";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::BadBaseIndex: return "BadBaseIndex";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::size_t> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {}

}  // namespace normspace
