#include "nhlab/specfun.hpp"

#include <cmath>
#include <numbers>

#include "nhlab/error.hpp"

namespace nhlab::specfun {

namespace {

void check_degree(int n) {
  if (n < 0 || n > kMaxDegree) {
    throw Error(ErrorKind::DegreeOutOfRange,
                "degree " + std::to_string(n) + " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
}

}  // namespace

cdouble hermite(int n, cdouble z) {
  check_degree(n);
  cdouble prev{1.0, 0.0};
  if (n == 0) return prev;
  cdouble cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cdouble next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double ho_norm(int n, const PhysParams& p) {
  check_degree(n);
  const double base = std::sqrt(p.m0 * p.freq / (std::numbers::pi * p.hbar));
  const double denom = std::tgamma(n + 1.0) * std::ldexp(1.0, n);
  return std::sqrt(base / denom);
}

cdouble eigenstate_ho(int n, cdouble x, const PhysParams& p) {
  const double mw = p.m0 * p.freq / p.hbar;
  return ho_norm(n, p) * std::exp(-0.5 * mw * x * x) * hermite(n, x * std::sqrt(mw));
}

cdouble eigenstate_inverted(int n, cdouble x, Branch branch, const PhysParams& p) {
  check_degree(n);
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  const double mw = p.m0 * p.freq / p.hbar;
  const cdouble rot = std::polar(1.0, sign * std::numbers::pi / 4);
  return std::exp(cdouble{0.0, -sign * 0.5 * mw} * x * x) * hermite(n, x * rot * std::sqrt(mw));
}

}  // namespace nhlab::specfun
