#include "rank1/error.hpp"

namespace rank1 {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DuplicatePosition: return "DuplicatePosition";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::NotBlockComplete: return "NotBlockComplete";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::DivisionByZeroMass: return "DivisionByZeroMass";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::NotStrictlyInterior: return "NotStrictlyInterior";
    case ErrorCode::NotAFamily: return "NotAFamily";
    case ErrorCode::NoCompletions: return "NoCompletions";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::NotCompletable: return "NotCompletable";
    case ErrorCode::UnsupportedPattern: return "UnsupportedPattern";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace rank1
