#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normspace {

enum class ErrorCode {
  NotSquare,
  NonZeroDiagonal,
  NonFinite,
  NonSymmetric,
  NonPositiveOffDiagonal,
  TriangleViolation,
  DimensionMismatch,
  ParameterOutOfRange,
  TooLarge,
  DomainMismatch,
  AnchorNotInDomain,
  DegenerateSample,
  SingularMatrix,
  ZeroCenter,
  EmptyDomain,
  BadDimensions,
  MembershipViolation,
  TooManyPoints,
  DegenerateInput,
  BadBaseIndex,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every precondition or validation failure in the library surfaces as an
/// Error. `witness()` carries the offending indices when there are any
/// (a pair for symmetry/positivity, a triple (i, j, k) for the triangle
/// inequality d(i,k) <= d(i,j) + d(j,k)).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> witness = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace normspace
