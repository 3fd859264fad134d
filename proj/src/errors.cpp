#include "spd_bregman/errors.hpp"

namespace spdb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::EigFailure: return "EigFailure";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::TOutOfRange: return "TOutOfRange";
    case ErrorCode::DualDomainViolation: return "DualDomainViolation";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::HypothesisNotDeclared: return "HypothesisNotDeclared";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace spdb
