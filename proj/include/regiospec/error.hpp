#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regiospec {

enum class ErrorCode {
  InvalidArgument,
  InvalidOrder,
  DivergentIntegral,
  PointOutsideDomain,
  PointOnBoundary,
  SingularPoint,
  OutsideConvergence,
  NoConvergence,
  UnsupportedOrder,
  NotMeanZero,
  SingularSystem,
  MassNotSPD,
  DimensionMismatch,
  ZeroVector,
  DependentVectors,
  InsufficientGrid,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the named codes above;
/// the CLI forwards the code name in its JSON payload.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regiospec
