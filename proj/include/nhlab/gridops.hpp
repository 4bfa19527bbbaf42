#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nhlab/analytic.hpp"
#include "nhlab/params.hpp"

namespace nhlab {

/// Position-space samples of a state at time t.
struct WaveGrid {
  GridSpec spec;
  std::vector<cdouble> amplitudes;
  double timestamp = 0.0;

  int size() const { return spec.numPoints; }
  double x(int i) const { return spec.x(i); }
};

namespace grid {

/// Relative threshold of the compactness invariant.
inline constexpr double kCompactTol = 1e-10;
/// Spectral coefficients below this fraction of the peak are treated as zero.
inline constexpr double kSpectralFloor = 1e-14;
/// Weighted spectrum may exceed the input peak by at most this factor.
inline constexpr double kSpectralGuard = 1e12;

WaveGrid sample(const GridSpec& spec, double t, const std::function<cdouble(double)>& f);
WaveGrid sample_analytic(const GridSpec& spec, double t, const analytic::AnalyticState& s);

/// max(|psi_0|, |psi_{N-1}|) / max |psi|; 0 for the zero state.
double boundary_ratio(const WaveGrid& s);
bool is_compact(const WaveGrid& s, double tol = kCompactTol);

/// Angular wavenumbers in FFT order (Nyquist entry negative).
std::vector<double> wavenumbers(const GridSpec& spec);

/// Band-limited (trigonometric) interpolant of the samples at arbitrary
/// points; points outside [xMin, xMax] evaluate to zero.
std::vector<cdouble> interpolate(const WaveGrid& s, std::span<const double> points);

enum class Direction { Forward, Inverse };

/// Position action of F(t):
///   forward  (F psi)(x)   = lambda^{-1/4} exp[i m0 lambda' x^2 / (4 lambda hbar)] psi(x / sqrt(lambda))
///   inverse  (F^-1 phi)(x) = lambda^{1/4} exp[-i m0 lambda' x^2 / (4 hbar)] phi(sqrt(lambda) x)
/// Throws InterpolationOverrun when the rescaled state reaches the grid edge.
WaveGrid apply_F(const WaveGrid& s, double t, const PhysParams& p, Direction dir);

/// exp[alpha p] via multiplication of the spectrum by exp[alpha hbar k].
/// Throws SpectralOverflow when the weighted spectrum exceeds the guard.
WaveGrid apply_exp_alpha_p(const WaveGrid& s, double alphaCoeff, const PhysParams& p);

/// Plain L2 inner product <a, b> by the trapezoid rule.
cdouble inner(const WaveGrid& a, const WaveGrid& b);
double norm(const WaveGrid& s);

/// <F s1, eta F s2>, eta = exp[2 beta p].
cdouble inner_eta_tilde(const WaveGrid& s1, const WaveGrid& s2, double t, const PhysParams& p);

/// Hermitian-frame state rho F psi; its plain moments are the eta~ moments.
WaveGrid metric_frame(const WaveGrid& s, double t, const PhysParams& p);
/// |(rho F psi)(x)|^2, the metric-weighted probability density.
std::vector<double> metric_density(const WaveGrid& s, double t, const PhysParams& p);

/// -i hbar d/dx, spectrally.
WaveGrid apply_p(const WaveGrid& s, double hbar);
/// Multiplication by x.
WaveGrid apply_x(const WaveGrid& s);

/// H0 = p^2/(2 m0) +- m0 freq^2 x^2 / 2 + i x (sign per regime).
WaveGrid apply_H0(const WaveGrid& s, const PhysParams& p);
/// h = rho H0 rho^{-1}.
WaveGrid apply_h(const WaveGrid& s, const PhysParams& p);

enum class Observable { X, P, X2, P2 };

/// <psi | eta~(t) O | psi>, evaluated as the plain moment of rho F psi.
cdouble moment(Observable op, const WaveGrid& s, double t, const PhysParams& p);

struct ObservableReport {
  double t = 0.0;
  cdouble meanX;
  cdouble meanP;
  double varX = 0.0;
  double varP = 0.0;
  double product = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  /// eta~ norm squared used to normalize the moments.
  double etaNorm = 0.0;
};

inline constexpr double kBoundSlack = 1e-6;

ObservableReport uncertainty_report(const WaveGrid& s, double t, const PhysParams& p);

}  // namespace grid
}  // namespace nhlab
