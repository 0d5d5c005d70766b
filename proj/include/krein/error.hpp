#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krein {

// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorCode {
  SpectrumCollision,
  DimensionMismatch,
  ConvergenceFailure,
  NotHermitian,
  NonFiniteValue,
  RankDeficientTrace,
  IdentityViolation,
  SingularBoundaryOperator,
  IntervalTouchesBaseSpectrum,
  NoConvergence,
  SingularResolvent,
  SampleOutsideUpperHalfPlane,
  NotApplicable,
  InvalidSpec,
  FileFormatError,
  CalibrationFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace krein
