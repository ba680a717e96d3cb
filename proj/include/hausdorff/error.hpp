#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hausdorff {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteSample,
  SingularityMismatch,
  NoMetric,
  NoMeasure,
  EmptyBall,
  EmptyLevel,
  WindowEscape,
  EmptyPreimage,
  InterpolationOutOfRange,
  MissingModulus,
  MissingMetricFactor,
  ViolatedBound,
  NotAnAtom,
  BudgetExceeded,
  CurveOriginViolation,
  SingularMatrix,
  BoundaryNode,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::SingularityMismatch: return "SingularityMismatch";
    case ErrorCode::NoMetric: return "NoMetric";
    case ErrorCode::NoMeasure: return "NoMeasure";
    case ErrorCode::EmptyBall: return "EmptyBall";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::WindowEscape: return "WindowEscape";
    case ErrorCode::EmptyPreimage: return "EmptyPreimage";
    case ErrorCode::InterpolationOutOfRange: return "InterpolationOutOfRange";
    case ErrorCode::MissingModulus: return "MissingModulus";
    case ErrorCode::MissingMetricFactor: return "MissingMetricFactor";
    case ErrorCode::ViolatedBound: return "ViolatedBound";
    case ErrorCode::NotAnAtom: return "NotAnAtom";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CurveOriginViolation: return "CurveOriginViolation";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BoundaryNode: return "BoundaryNode";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace hausdorff
