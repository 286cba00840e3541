#pragma once

#include <stdexcept>
#include <string>

namespace rank1 {

enum class ErrorCode {
  OutOfRange,
  DuplicatePosition,
  NegativeValue,
  DimensionMismatch,
  Parse,
  InvalidArgument,
  NonPositiveEntry,
  NotBlockComplete,
  InternalInconsistency,
  DivisionByZeroMass,
  NotOnBoundary,
  NotStrictlyInterior,
  NotAFamily,
  NoCompletions,
  DidNotConverge,
  NotCompletable,
  UnsupportedPattern,
  DegenerateDenominator,
  DegreeCapExceeded,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rank1
