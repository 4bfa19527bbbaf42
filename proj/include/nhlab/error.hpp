#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nhlab {

enum class ErrorKind {
  NonPositiveScale,
  ComplexLambda,
  ZeroAuxiliary,
  InvalidGrid,
  InvalidWindow,
  AlphaZero,
  AlphaZeroCrossing,
  DegreeOutOfRange,
  InterpolationOverrun,
  SpectralOverflow,
  GridMismatch,
  BoundaryLeak,
  StepCollapse,
  InvalidControls,
  ConfigParse,
  RegimeMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind and, for time-dependent
/// failures, the time at which the failure was detected.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<double> time = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> time() const noexcept { return time_; }

 private:
  ErrorKind kind_;
  std::optional<double> time_;
};

}  // namespace nhlab
