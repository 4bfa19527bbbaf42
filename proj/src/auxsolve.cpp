#include "nhlab/auxsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "nhlab/error.hpp"

namespace nhlab::aux {

AlphaDerivs alpha_derivs(double t, const PhysParams& p) {
  const double w = p.freq;
  if (p.regime == Regime::Harmonic) {
    // 2 Re[A e^{i w t}] with B = conj(A).
    const cdouble z = p.coeffA * std::polar(1.0, w * t);
    return {2.0 * z.real(), -2.0 * w * z.imag(), -2.0 * w * w * z.real()};
  }
  const double a = p.coeffA.real() * std::exp(w * t);
  const double b = p.coeffB.real() * std::exp(-w * t);
  return {a + b, w * (a - b), w * w * (a + b)};
}

double alpha(double t, const PhysParams& p) { return alpha_derivs(t, p).alpha; }

double alpha_epsilon(const PhysParams& p) {
  return 1e-9 * std::max(std::abs(p.coeffA), std::abs(p.coeffB));
}

LambdaDerivs lambda_derivs(double t, const PhysParams& p) {
  const auto [a, da, dda] = alpha_derivs(t, p);
  if (std::abs(a) < alpha_epsilon(p)) {
    throw Error(ErrorKind::AlphaZero, "alpha(t) vanishes", t);
  }
  return {a * a, 2.0 * a * da, 2.0 * da * da + 2.0 * a * dda};
}

double omega_sq(const LambdaDerivs& l) {
  const double r = l.dlambda / l.lambda;
  return 0.25 * r * r - 0.5 * l.ddlambda / l.lambda;
}

double omega_sq(double t, const PhysParams& p) { return omega_sq(lambda_derivs(t, p)); }

double omega_sq_residual(const LambdaDerivs& l, double signedOmega0Sq) {
  return std::abs(l.ddlambda - l.dlambda * l.dlambda / (2.0 * l.lambda) +
                  2.0 * l.lambda * signedOmega0Sq);
}

double omega_sq_residual(double t, const PhysParams& p) {
  return omega_sq_residual(lambda_derivs(t, p), signed_omega0_sq(p));
}

double omega_sq_residual_scale(const LambdaDerivs& l, double signedOmega0Sq) {
  return std::abs(l.ddlambda) + std::abs(l.dlambda * l.dlambda / (2.0 * l.lambda)) +
         std::abs(2.0 * l.lambda * signedOmega0Sq) + 1.0;
}

namespace {

// Earliest exact zero of alpha inside [t0, t1], if any.
std::optional<double> predicted_zero(const TimeWindow& w, const PhysParams& p) {
  if (p.regime == Regime::Harmonic) {
    // alpha = 2|A| cos(w t + arg A); zeros at w t + arg A = pi/2 + k pi.
    const double phase = std::arg(p.coeffA);
    const double pi = std::numbers::pi;
    const double k = std::ceil((p.freq * w.t0 + phase - pi / 2) / pi);
    const double tz = (pi / 2 + k * pi - phase) / p.freq;
    if (tz <= w.t1) return std::max(tz, w.t0);
    return std::nullopt;
  }
  const double a = p.coeffA.real();
  const double b = p.coeffB.real();
  if (a == 0.0 || b == 0.0 || a * b > 0.0) return std::nullopt;
  const double tz = std::log(-b / a) / (2.0 * p.freq);
  if (tz >= w.t0 && tz <= w.t1) return tz;
  return std::nullopt;
}

}  // namespace

void validate_interval(const TimeWindow& w, const PhysParams& p) {
  validate_window_shape(w);
  const double threshold = 10.0 * alpha_epsilon(p);

  std::optional<double> offending = predicted_zero(w, p);
  for (int i = 0; i < kIntervalScanPoints; ++i) {
    const double t = w.t0 + (w.t1 - w.t0) * i / (kIntervalScanPoints - 1);
    if (offending && t >= *offending) break;
    if (std::abs(alpha(t, p)) <= threshold) {
      offending = t;
      break;
    }
  }
  if (offending) {
    std::ostringstream msg;
    msg << "alpha(t) vanishes in [" << w.t0 << ", " << w.t1 << "] near t = " << *offending;
    throw Error(ErrorKind::AlphaZeroCrossing, msg.str(), *offending);
  }
}

}  // namespace nhlab::aux
