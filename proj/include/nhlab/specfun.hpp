#pragma once

#include "nhlab/params.hpp"

namespace nhlab::specfun {

inline constexpr int kMaxDegree = 64;

/// Physicists' Hermite polynomial H_n(z) by upward recurrence.
cdouble hermite(int n, cdouble z);

/// [ (m0 Omega0 / (pi hbar))^{1/2} / (n! 2^n) ]^{1/2}
double ho_norm(int n, const PhysParams& p);

/// Harmonic oscillator eigenfunction extended to complex x.
cdouble eigenstate_ho(int n, cdouble x, const PhysParams& p);

/// Inverted oscillator generalized eigenfunction (unit prefactor).
cdouble eigenstate_inverted(int n, cdouble x, Branch branch, const PhysParams& p);

}  // namespace nhlab::specfun
