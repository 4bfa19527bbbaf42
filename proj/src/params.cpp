#include "nhlab/params.hpp"

#include <cmath>

#include "nhlab/error.hpp"

namespace nhlab {

PhysParams validate_params(PhysParams raw) {
  if (!(raw.m0 > 0.0) || !(raw.hbar > 0.0) || !(raw.freq > 0.0)) {
    throw Error(ErrorKind::NonPositiveScale, "m0, hbar and freq must be strictly positive");
  }
  if (!std::isfinite(raw.m0) || !std::isfinite(raw.hbar) || !std::isfinite(raw.freq)) {
    throw Error(ErrorKind::NonPositiveScale, "m0, hbar and freq must be finite");
  }
  if (raw.n < 0) {
    throw Error(ErrorKind::DegreeOutOfRange, "quantum number must be non-negative");
  }
  const double scale = std::max(std::abs(raw.coeffA), std::abs(raw.coeffB));
  if (scale == 0.0) {
    throw Error(ErrorKind::ZeroAuxiliary, "auxiliary coefficients are both zero");
  }

  if (raw.regime == Regime::Harmonic) {
    // alpha(t) is real only for B = conj(A).
    if (std::abs(raw.coeffB - std::conj(raw.coeffA)) > kConjugateSnapTol * scale) {
      throw Error(ErrorKind::ComplexLambda, "harmonic regime requires coeffB = conj(coeffA)");
    }
    raw.coeffB = std::conj(raw.coeffA);
    if (raw.coeffA == cdouble{}) {
      throw Error(ErrorKind::ZeroAuxiliary, "harmonic regime requires coeffA != 0");
    }
  } else {
    if (std::abs(raw.coeffA.imag()) > kConjugateSnapTol * scale ||
        std::abs(raw.coeffB.imag()) > kConjugateSnapTol * scale) {
      throw Error(ErrorKind::ComplexLambda, "inverted regime requires real coefficients");
    }
    raw.coeffA = raw.coeffA.real();
    raw.coeffB = raw.coeffB.real();
  }
  return raw;
}

GridSpec validate_grid(const GridSpec& grid) {
  if (!(grid.xMin < grid.xMax) || !std::isfinite(grid.xMin) || !std::isfinite(grid.xMax)) {
    throw Error(ErrorKind::InvalidGrid, "grid requires finite xMin < xMax");
  }
  if (grid.numPoints < 16) {
    throw Error(ErrorKind::InvalidGrid, "grid requires at least 16 points");
  }
  return grid;
}

TimeWindow validate_window_shape(const TimeWindow& window) {
  if (!(window.t0 < window.t1) || !std::isfinite(window.t0) || !std::isfinite(window.t1)) {
    throw Error(ErrorKind::InvalidWindow, "time window requires finite t0 < t1");
  }
  if (!(window.maxStep > 0.0)) {
    throw Error(ErrorKind::InvalidWindow, "maxStep must be positive");
  }
  return window;
}

}  // namespace nhlab
