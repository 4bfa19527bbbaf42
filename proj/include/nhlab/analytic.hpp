#pragma once

#include "nhlab/params.hpp"

namespace nhlab::analytic {

/// One exact solution psi_n(x, t) of the time-dependent problem.
struct AnalyticState {
  PhysParams params;
  int n = 0;
  Branch branch = Branch::Plus;
  /// E_n (harmonic, real) or the inverted-regime label E.
  cdouble energy;
};

/// Builds the state for params.n; the inverted energy defaults to
/// inverted_eigenvalue() when params.energyInverted is unset.
AnalyticState make_state(const PhysParams& p);
AnalyticState make_state(const PhysParams& p, int n);

/// hbar Omega0 (n + 1/2) + 1 / (2 m0 Omega0^2)
double energy_ho(int n, const PhysParams& p);

/// Eigenvalue carried by the Hermite-form inverted states under
/// h = p^2/2m0 - m0 omega0^2 x^2 / 2 - 1/(2 m0 omega0^2):
/// +-i hbar omega0 (n + 1/2) - 1/(2 m0 omega0^2).
cdouble inverted_eigenvalue(int n, Branch branch, const PhysParams& p);

/// Coefficient beta of the Dyson map rho = exp[beta p]:
/// 1/(hbar m0 Omega0^2) (harmonic), -1/(hbar m0 omega0^2) (inverted).
/// The metric is eta = exp[2 beta p].
double dyson_coefficient(const PhysParams& p);

/// exp[alpha p] f(x) = f(x - i alpha hbar); returns -i alpha hbar.
cdouble exp_alpha_p_shift(double alphaCoeff, double hbar);

/// Complex shift s with (rho^direction f)(x) = f(x + s), direction = +1 or -1.
/// rho^{-1} shifts by +i/(m0 Omega0^2) (harmonic) or -i/(m0 omega0^2) (inverted).
cdouble rho_shift(int direction, const PhysParams& p);

/// Stationary state of the time-independent non-Hermitian Hamiltonian,
/// rho^{-1} varphi_n, evaluated at complex argument y.
cdouble stationary(cdouble y, const AnalyticState& s);

/// phi(y, t) = e^{-iEt/hbar} (rho^{-1} varphi_n)(y): the F-frame solution.
cdouble phi_t(double y, double t, const AnalyticState& s);

cdouble psi_harmonic(double x, double t, const AnalyticState& s);
cdouble psi_inverted(double x, double t, const AnalyticState& s);
/// Dispatches on the regime of s.params.
cdouble psi(double x, double t, const AnalyticState& s);

}  // namespace nhlab::analytic
