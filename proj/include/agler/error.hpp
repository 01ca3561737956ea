#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agler {

enum class ErrorKind {
  kDimensionMismatch,
  kSingularMatrix,
  kNotHermitian,
  kNotDecomposition,
  kOutsideDomain,
  kNotSkewAdjoint,
  kNotUnitary,
  kPoleAtOne,
  kPoleAtMinusOne,
  kEigenvalueOne,
  kSingularIminusD,
  kSingularBlock,
  kNotScalar,
  kGramMismatch,
  kDomainMismatch,
  kWrongTupleKind,
  kDegreeTooSmall,
  kNotDissipative,
  kInvariantViolation,
  kBadParams,
  kParseError,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. Callers dispatch on
/// kind(); what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace agler
