#pragma once

#include <complex>
#include <optional>

namespace nhlab {

using cdouble = std::complex<double>;

enum class Regime { Harmonic, Inverted };
enum class Branch { Plus, Minus };

/// Physical configuration of one model instance
///   H(t) = p^2 / (2 m0 lambda(t)) + i sqrt(lambda(t)) x.
///
/// `freq` is Omega0 in the harmonic regime and omega0 in the inverted one.
/// The auxiliary function is alpha(t) = A e^{i Omega0 t} + B e^{-i Omega0 t}
/// (harmonic, B = conj(A)) or A e^{omega0 t} + B e^{-omega0 t} (inverted).
struct PhysParams {
  double m0 = 1.0;
  double hbar = 1.0;
  Regime regime = Regime::Harmonic;
  double freq = 1.0;
  cdouble coeffA{0.5, 0.0};
  cdouble coeffB{0.5, 0.0};
  int n = 0;
  std::optional<cdouble> energyInverted;
  Branch branchInverted = Branch::Plus;
};

/// Uniform grid including both end points.
struct GridSpec {
  double xMin = -18.0;
  double xMax = 18.0;
  int numPoints = 2048;

  double dx() const { return (xMax - xMin) / (numPoints - 1); }
  double x(int i) const { return xMin + i * dx(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 1.0;
  double maxStep = 1e-3;
};

/// Relative tolerance under which a harmonic B is snapped onto conj(A).
inline constexpr double kConjugateSnapTol = 1e-12;

PhysParams validate_params(PhysParams raw);
GridSpec validate_grid(const GridSpec& grid);
/// Shape checks only; the alpha != 0 requirement is auxsolve::validate_interval.
TimeWindow validate_window_shape(const TimeWindow& window);

/// Signed Omega0^2: +freq^2 (harmonic) or -freq^2 (inverted).
inline double signed_omega0_sq(const PhysParams& p) {
  return p.regime == Regime::Harmonic ? p.freq * p.freq : -p.freq * p.freq;
}

}  // namespace nhlab
