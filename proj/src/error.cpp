#include "nhlab/error.hpp"

namespace nhlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::ComplexLambda: return "ComplexLambda";
    case ErrorKind::ZeroAuxiliary: return "ZeroAuxiliary";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
    case ErrorKind::AlphaZero: return "AlphaZero";
    case ErrorKind::AlphaZeroCrossing: return "AlphaZeroCrossing";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::InterpolationOverrun: return "InterpolationOverrun";
    case ErrorKind::SpectralOverflow: return "SpectralOverflow";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::BoundaryLeak: return "BoundaryLeak";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::InvalidControls: return "InvalidControls";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::RegimeMismatch: return "RegimeMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<double> time)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), time_(time) {}

}  // namespace nhlab
