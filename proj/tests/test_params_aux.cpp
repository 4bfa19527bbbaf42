#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nhlab/auxsolve.hpp"
#include "nhlab/params.hpp"
#include "oracles.hpp"

using namespace nhlab;

namespace {

PhysParams inverted(double a, double b, double w) {
  PhysParams p;
  p.regime = Regime::Inverted;
  p.coeffA = a;
  p.coeffB = b;
  p.freq = w;
  return validate_params(p);
}

}  // namespace

TEST_CASE("validate_params accepts the default harmonic configuration") {
  const PhysParams p = validate_params(PhysParams{});
  CHECK(p.coeffB == std::conj(p.coeffA));
}

TEST_CASE("validate_params rejects bad input") {
  PhysParams p;
  p.coeffA = 1.0;
  p.coeffB = 2.0;
  CHECK_ERROR_KIND(validate_params(p), ErrorKind::ComplexLambda);

  PhysParams neg;
  neg.m0 = -1.0;
  CHECK_ERROR_KIND(validate_params(neg), ErrorKind::NonPositiveScale);
  neg = PhysParams{};
  neg.hbar = 0.0;
  CHECK_ERROR_KIND(validate_params(neg), ErrorKind::NonPositiveScale);
  neg = PhysParams{};
  neg.freq = -2.0;
  CHECK_ERROR_KIND(validate_params(neg), ErrorKind::NonPositiveScale);

  PhysParams zero;
  zero.coeffA = 0.0;
  zero.coeffB = 0.0;
  CHECK_ERROR_KIND(validate_params(zero), ErrorKind::ZeroAuxiliary);
}

TEST_CASE("harmonic B within round-off of conj(A) is snapped") {
  PhysParams p;
  p.coeffA = cdouble{0.3, 0.4};
  p.coeffB = cdouble{0.3, -0.4 * (1.0 + 1e-14)};
  const PhysParams v = validate_params(p);
  CHECK(v.coeffB == std::conj(v.coeffA));
}

TEST_CASE("grid and window shape checks") {
  CHECK_ERROR_KIND(validate_grid(GridSpec{1.0, -1.0, 64}), ErrorKind::InvalidGrid);
  CHECK_ERROR_KIND(validate_grid(GridSpec{-1.0, 1.0, 4}), ErrorKind::InvalidGrid);
  CHECK_ERROR_KIND(validate_window_shape(TimeWindow{1.0, 0.0, 1e-3}), ErrorKind::InvalidWindow);
  CHECK_NOTHROW(validate_window_shape(TimeWindow{}));
}

TEST_CASE("alpha closed forms") {
  const PhysParams h = validate_params(PhysParams{});
  CHECK(aux::alpha(0.0, h) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(aux::alpha(std::numbers::pi / 3, h) == doctest::Approx(std::cos(std::numbers::pi / 3)));
  CHECK(aux::alpha(0.0, inverted(1.0, 1.0, 2.0)) == doctest::Approx(2.0));
}

TEST_CASE("lambda = alpha^2 and its derivatives") {
  const PhysParams h = validate_params(PhysParams{});
  const auto l0 = aux::lambda_derivs(0.0, h);
  CHECK(l0.lambda == doctest::Approx(1.0));
  CHECK(std::abs(l0.dlambda) < 1e-15);
  CHECK(l0.ddlambda == doctest::Approx(-2.0));
  CHECK(aux::lambda_derivs(std::numbers::pi / 4, h).lambda == doctest::Approx(0.5));

  const auto li = aux::lambda_derivs(0.0, inverted(0.5, 0.5, 1.0));
  CHECK(li.lambda == doctest::Approx(1.0));
  CHECK(std::abs(li.dlambda) < 1e-15);
  CHECK(li.ddlambda == doctest::Approx(2.0));
}

TEST_CASE("lambda derivatives agree with central differences (property)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(-1.2, 1.2);
  const double h = 1e-4;
  for (const PhysParams& p : {validate_params(PhysParams{}), inverted(0.7, 0.4, 1.3)}) {
    for (int i = 0; i < 50; ++i) {
      const double t = time(rng);
      if (std::abs(aux::alpha(t, p)) < 0.05) continue;
      const auto l = aux::lambda_derivs(t, p);
      auto lam = [&](double s) { return aux::lambda_derivs(s, p).lambda; };
      auto dlam = [&](double s) { return aux::lambda_derivs(s, p).dlambda; };
      const double fd1 = (lam(t + h) - lam(t - h)) / (2 * h);
      const double fd2 = (dlam(t + h) - dlam(t - h)) / (2 * h);
      CHECK(std::abs(fd1 - l.dlambda) < 1e-6 * (std::abs(l.dlambda) + 1.0));
      CHECK(std::abs(fd2 - l.ddlambda) < 1e-6 * (std::abs(l.ddlambda) + 1.0));
    }
  }
}

TEST_CASE("Omega^2(t) is constant and the auxiliary residual vanishes (property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(-1.0, 1.0);
  const PhysParams h = validate_params(PhysParams{});
  const PhysParams inv = inverted(0.5, 0.5, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t = time(rng);
    CHECK(aux::omega_sq(t, h) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(aux::omega_sq(t, inv) == doctest::Approx(-1.0).epsilon(1e-9));
    for (const PhysParams* p : {&h, &inv}) {
      const auto l = aux::lambda_derivs(t, *p);
      const double w2 = signed_omega0_sq(*p);
      CHECK(aux::omega_sq_residual(l, w2) < 1e-9 * aux::omega_sq_residual_scale(l, w2));
    }
  }
  CHECK(aux::omega_sq_residual(0.3, h) < 1e-12);
  CHECK(aux::omega_sq_residual(1.0, inv) < 1e-12);
}

TEST_CASE("an injected perturbation shows up in the residual") {
  const PhysParams h = validate_params(PhysParams{});
  auto l = aux::lambda_derivs(0.3, h);
  l.ddlambda += 0.1;
  CHECK(aux::omega_sq_residual(l, 1.0) >= 0.09);
}

TEST_CASE("alpha zeros") {
  const PhysParams h = validate_params(PhysParams{});
  CHECK_ERROR_KIND(aux::lambda_derivs(std::numbers::pi / 2, h), ErrorKind::AlphaZero);
  CHECK_NOTHROW(aux::validate_interval(TimeWindow{0.0, 1.0, 1e-3}, h));

  try {
    aux::validate_interval(TimeWindow{0.0, 2.0, 1e-3}, h);
    FAIL("expected AlphaZeroCrossing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphaZeroCrossing);
    REQUIRE(e.time());
    CHECK(*e.time() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  }

  try {
    aux::validate_interval(TimeWindow{-1.0, 1.0, 1e-3}, inverted(1.0, -1.0, 1.0));
    FAIL("expected AlphaZeroCrossing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphaZeroCrossing);
    REQUIRE(e.time());
    CHECK(std::abs(*e.time()) < 1e-6);
  }
}
