#pragma once

#include "nhlab/params.hpp"

namespace nhlab::aux {

struct AlphaDerivs {
  double alpha;
  double dalpha;
  double ddalpha;
};

/// lambda(t) and its first two time derivatives.
struct LambdaDerivs {
  double lambda;
  double dlambda;
  double ddlambda;
};

/// Closed-form solution of alpha'' + Omega0^2 alpha = 0 and its derivatives.
AlphaDerivs alpha_derivs(double t, const PhysParams& p);
double alpha(double t, const PhysParams& p);

/// Zero threshold: 1e-9 * max(|A|, |B|).
double alpha_epsilon(const PhysParams& p);

/// lambda = alpha^2. Throws AlphaZero where |alpha| < alpha_epsilon.
LambdaDerivs lambda_derivs(double t, const PhysParams& p);

/// Omega^2(t) = lambda'^2 / (4 lambda^2) - lambda'' / (2 lambda).
double omega_sq(const LambdaDerivs& l);
double omega_sq(double t, const PhysParams& p);

/// |lambda'' - lambda'^2/(2 lambda) + 2 lambda Omega0^2| for given derivatives.
double omega_sq_residual(const LambdaDerivs& l, double signedOmega0Sq);
double omega_sq_residual(double t, const PhysParams& p);
/// Scale against which omega_sq_residual is compared.
double omega_sq_residual_scale(const LambdaDerivs& l, double signedOmega0Sq);

/// Minimum number of mesh points scanned by validate_interval.
inline constexpr int kIntervalScanPoints = 10001;

/// Accepts windows where min |alpha| > 10 * alpha_epsilon. Throws
/// AlphaZeroCrossing carrying the earliest offending time otherwise.
void validate_interval(const TimeWindow& w, const PhysParams& p);

/// Value-type view over one validated parameter set.
class AuxiliarySolution {
 public:
  explicit AuxiliarySolution(const PhysParams& p) : params_(validate_params(p)) {}

  const PhysParams& params() const { return params_; }
  AlphaDerivs alpha(double t) const { return alpha_derivs(t, params_); }
  LambdaDerivs lambda(double t) const { return lambda_derivs(t, params_); }

 private:
  PhysParams params_;
};

}  // namespace nhlab::aux
