#include "regiospec/error.hpp"

namespace regiospec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::PointOnBoundary: return "PointOnBoundary";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::OutsideConvergence: return "OutsideConvergence";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NotMeanZero: return "NotMeanZero";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::MassNotSPD: return "MassNotSPD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::InsufficientGrid: return "InsufficientGrid";
  }
  return "Unknown";
}

}  // namespace regiospec
