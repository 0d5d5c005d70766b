#include "krein/error.hpp"

namespace krein {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::SpectrumCollision: return "SpectrumCollision";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
  case ErrorCode::NotHermitian: return "NotHermitian";
  case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  case ErrorCode::RankDeficientTrace: return "RankDeficientTrace";
  case ErrorCode::IdentityViolation: return "IdentityViolation";
  case ErrorCode::SingularBoundaryOperator: return "SingularBoundaryOperator";
  case ErrorCode::IntervalTouchesBaseSpectrum: return "IntervalTouchesBaseSpectrum";
  case ErrorCode::NoConvergence: return "NoConvergence";
  case ErrorCode::SingularResolvent: return "SingularResolvent";
  case ErrorCode::SampleOutsideUpperHalfPlane: return "SampleOutsideUpperHalfPlane";
  case ErrorCode::NotApplicable: return "NotApplicable";
  case ErrorCode::InvalidSpec: return "InvalidSpec";
  case ErrorCode::FileFormatError: return "FileFormatError";
  case ErrorCode::CalibrationFailure: return "CalibrationFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace krein
