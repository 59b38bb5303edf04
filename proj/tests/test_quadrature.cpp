#include <cmath>
#include <cstdint>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtherm/quadrature.hpp"

using rtherm::integrate_finite;
using rtherm::integrate_semi_infinite;

TEST_CASE("finite integrals with closed forms") {
  const auto cube = integrate_finite([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(cube.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(cube.evaluations >= 1);

  const auto sin2 = integrate_finite(
      [](double t) { return std::sin(t) * std::sin(t); }, 0.0, oracle::pi);
  CHECK(sin2.value == doctest::Approx(oracle::pi / 2).epsilon(1e-12));
}

TEST_CASE("aberration-weighted angular integral") {
  const double beta = 0.6;
  auto f = [beta](double t) {
    const double d = 1.0 + beta * std::cos(t);
    return std::sin(t) * std::sin(t) / (d * d);
  };
  const double s = std::sqrt(1.0 - beta * beta);
  const double closed = oracle::pi * (1.0 - s) / (beta * beta * s);
  // The closed form is checked against brute force before it is trusted.
  const double brute = oracle::midpoint(f, 0.0, oracle::pi, 1000000);
  REQUIRE(closed == doctest::Approx(brute).epsilon(1e-11));
  CHECK(closed == doctest::Approx(5.0 * oracle::pi / 7.2).epsilon(1e-14));

  const auto q = integrate_finite(f, 0.0, oracle::pi);
  CHECK(q.value == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("semi-infinite integrals") {
  const auto bose = integrate_semi_infinite(
      [](double x) { return x * x * x / std::expm1(x); });
  const double series = oracle::bose_integral_series();
  REQUIRE(series == doctest::Approx(std::pow(oracle::pi, 4) / 15).epsilon(1e-12));
  CHECK(bose.value == doctest::Approx(series).epsilon(1e-10));

  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_semi_infinite([](double x) {
          return x * x * x * std::exp(-x);
        }).value == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("scale of the compactifying map does not change the result") {
  auto f = [](double x) { return x * x * x / std::expm1(x / 0.01); };
  const double exact = oracle::bose_integral_series() * 1e-8;
  CHECK(integrate_semi_infinite(f, 1e-10, 1.0).value ==
        doctest::Approx(exact).epsilon(1e-9));
  CHECK(integrate_semi_infinite(f, 1e-10, 0.01).value ==
        doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("reported error bounds the true error") {
  struct Case {
    double exact;
    rtherm::QuadratureResult got;
  };
  const double s = 0.8;
  const Case cases[] = {
      {1.0 / 3.0, integrate_finite([](double x) { return x * x; }, 0.0, 1.0)},
      {oracle::pi / 2, integrate_finite(
                           [](double t) { return std::sin(t) * std::sin(t); },
                           0.0, oracle::pi)},
      {oracle::pi * (1 - s) / (0.36 * s),
       integrate_finite(
           [](double t) {
             const double d = 1.0 + 0.6 * std::cos(t);
             return std::sin(t) * std::sin(t) / (d * d);
           },
           0.0, oracle::pi)},
      {std::pow(oracle::pi, 4) / 15,
       integrate_semi_infinite([](double x) { return x * x * x / std::expm1(x); })},
      {1.0, integrate_semi_infinite([](double x) { return std::exp(-x); })},
      {6.0, integrate_semi_infinite(
                [](double x) { return x * x * x * std::exp(-x); })},
  };
  for (const auto& c : cases) {
    CHECK(c.got.error_estimate >= 0.0);
    // Allow a few ulps of rounding on top of the estimate.
    CHECK(std::abs(c.got.value - c.exact) <=
          c.got.error_estimate + 8e-16 * std::abs(c.exact));
  }
}

TEST_CASE("linearity and additivity") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x) + 2.0; };
  const double base = integrate_finite(f, 0.0, 2.0).value;
  for (int i = 0; i < 20; ++i) {
    const double c = scale(gen);
    const double scaled =
        integrate_finite([&](double x) { return c * f(x); }, 0.0, 2.0).value;
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-10));
  }
  const double left = integrate_finite(f, 0.0, 0.7).value;
  const double right = integrate_finite(f, 0.7, 2.0).value;
  CHECK(left + right == doctest::Approx(base).epsilon(2e-10));
}

TEST_CASE("tight tolerance is reachable") {
  const auto q = integrate_finite([](double x) { return std::exp(x); }, 0.0, 1.0,
                                  1e-14);
  CHECK(q.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("deterministic for fixed inputs") {
  auto f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  const auto a = integrate_finite(f, -1.0, 1.0, 1e-12);
  const auto b = integrate_finite(f, -1.0, 1.0, 1e-12);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("argument checks") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate_finite(f, 1.0, 1.0), rtherm::DomainError);
  CHECK_THROWS_AS(integrate_finite(f, 2.0, 1.0), rtherm::DomainError);
  CHECK_THROWS_AS(integrate_finite(f, 0.0, 1.0, 1e-15), rtherm::DomainError);
  CHECK_THROWS_AS(integrate_finite(f, 0.0, 1.0, 0.1), rtherm::DomainError);
  CHECK_THROWS_AS(
      integrate_finite([](double) { return std::nan(""); }, 0.0, 1.0),
      rtherm::DomainError);
}

TEST_CASE("budget exhaustion reports the best estimate") {
  // Deterministic white noise in [0, 1): no refinement ever settles it.
  auto noise = [](double x) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof x);
    __builtin_memcpy(&bits, &x, sizeof bits);
    bits ^= bits >> 33;
    bits *= 0xff51afd7ed558ccdull;
    bits ^= bits >> 33;
    return static_cast<double>(bits >> 11) / 9007199254740992.0;
  };
  try {
    integrate_finite(noise, 0.0, 1.0, 1e-12);
    FAIL("expected AccuracyError");
  } catch (const rtherm::AccuracyError& e) {
    CHECK(e.best_value() == doctest::Approx(0.5).epsilon(0.01));
    CHECK(e.best_error() > 0.0);
  }
}
