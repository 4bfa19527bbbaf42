#include "nhlab/analytic.hpp"

#include <cmath>

#include "nhlab/auxsolve.hpp"
#include "nhlab/error.hpp"
#include "nhlab/specfun.hpp"

namespace nhlab::analytic {

AnalyticState make_state(const PhysParams& p) { return make_state(p, p.n); }

AnalyticState make_state(const PhysParams& raw, int n) {
  const PhysParams p = validate_params(raw);
  if (n < 0 || n > specfun::kMaxDegree) {
    throw Error(ErrorKind::DegreeOutOfRange, "quantum number out of range");
  }
  AnalyticState s{p, n, p.branchInverted, {}};
  if (p.regime == Regime::Harmonic) {
    s.energy = energy_ho(n, p);
  } else {
    s.energy = p.energyInverted.value_or(inverted_eigenvalue(n, p.branchInverted, p));
  }
  return s;
}

double energy_ho(int n, const PhysParams& p) {
  return p.hbar * p.freq * (n + 0.5) + 1.0 / (2.0 * p.m0 * p.freq * p.freq);
}

cdouble inverted_eigenvalue(int n, Branch branch, const PhysParams& p) {
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  return {-1.0 / (2.0 * p.m0 * p.freq * p.freq), sign * p.hbar * p.freq * (n + 0.5)};
}

double dyson_coefficient(const PhysParams& p) {
  const double c = 1.0 / (p.hbar * p.m0 * p.freq * p.freq);
  return p.regime == Regime::Harmonic ? c : -c;
}

cdouble exp_alpha_p_shift(double alphaCoeff, double hbar) { return {0.0, -alphaCoeff * hbar}; }

cdouble rho_shift(int direction, const PhysParams& p) {
  return exp_alpha_p_shift(direction * dyson_coefficient(p), p.hbar);
}

cdouble stationary(cdouble y, const AnalyticState& s) {
  const cdouble shifted = y + rho_shift(-1, s.params);
  if (s.params.regime == Regime::Harmonic) {
    return specfun::eigenstate_ho(s.n, shifted, s.params);
  }
  return specfun::eigenstate_inverted(s.n, shifted, s.branch, s.params);
}

cdouble phi_t(double y, double t, const AnalyticState& s) {
  return std::exp(cdouble{0.0, -t / s.params.hbar} * s.energy) * stationary(y, s);
}

namespace {

// psi = F^{-1} phi:  lambda^{1/4} exp[-i m0 lambda' x^2 / (4 hbar)] phi(sqrt(lambda) x, t).
cdouble psi_any(double x, double t, const AnalyticState& s) {
  const auto l = aux::lambda_derivs(t, s.params);
  const double chirp = -s.params.m0 * l.dlambda * x * x / (4.0 * s.params.hbar);
  return std::polar(std::pow(l.lambda, 0.25), chirp) * phi_t(std::sqrt(l.lambda) * x, t, s);
}

}  // namespace

cdouble psi_harmonic(double x, double t, const AnalyticState& s) {
  if (s.params.regime != Regime::Harmonic) {
    throw Error(ErrorKind::RegimeMismatch, "psi_harmonic needs a harmonic state");
  }
  return psi_any(x, t, s);
}

cdouble psi_inverted(double x, double t, const AnalyticState& s) {
  if (s.params.regime != Regime::Inverted) {
    throw Error(ErrorKind::RegimeMismatch, "psi_inverted needs an inverted state");
  }
  return psi_any(x, t, s);
}

cdouble psi(double x, double t, const AnalyticState& s) { return psi_any(x, t, s); }

}  // namespace nhlab::analytic
