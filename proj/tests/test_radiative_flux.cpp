#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rtherm/errors.hpp"
#include "rtherm/radiative_flux.hpp"

using namespace rtherm;

namespace {

AbsorptionProfile five_segment() {
  return AbsorptionProfile::piecewise({{0.3, 0.2},
                                       {1.0, 0.9},
                                       {2.0, 0.5},
                                       {3.5, 1.0},
                                       {5.0, 0.1},
                                       {8.0, 0.0}});
}

}  // namespace

TEST_CASE("doppler frequency") {
  CHECK(doppler_frequency(make_boost(0.0), 1.1, 1.0) == 1.0);
  CHECK(doppler_frequency(make_boost(0.6), 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(doppler_frequency(make_boost(0.6), oracle::pi / 2, 1.0) ==
        doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(doppler_frequency(make_boost(0.6), -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(doppler_frequency(make_boost(0.6), 3.2, 1.0), DomainError);
  CHECK_THROWS_AS(doppler_frequency(make_boost(0.6), 1.0, -1.0), DomainError);

  for (double beta : {0.0, 0.3, 0.6, 0.9}) {
    const Boost b = make_boost(beta);
    for (int i = 0; i <= 64; ++i) {
      const double th = oracle::pi * i / 64.0;
      const double w = doppler_frequency(b, th, 2.5);
      CHECK(w >= b.gamma() * (1 - beta) * 2.5 * (1 - 1e-15));
      CHECK(w <= b.gamma() * (1 + beta) * 2.5 * (1 + 1e-15));
    }
  }
}

TEST_CASE("planck occupation") {
  CHECK(planck_occupation(1e4, 1.0) == 0.0);
  CHECK(planck_occupation(1.0, 1.0) ==
        doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-15));
  CHECK(planck_occupation(1.0, 1.0) == doctest::Approx(0.581977).epsilon(1e-6));
  // Laurent series T/w - 1/2 + w/(12T).
  const double w = 0.001;
  CHECK(planck_occupation(w, 1.0) ==
        doctest::Approx(1.0 / w - 0.5 + w / 12.0).epsilon(1e-12));
  CHECK_THROWS_AS(planck_occupation(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(planck_occupation(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(planck_occupation(1.0, -2.0), DomainError);
}

TEST_CASE("emitted integrand") {
  const auto black = AbsorptionProfile::gray(1.0);
  CHECK(emitted_integrand(black, 1.0, 1.0) ==
        doctest::Approx(oracle::pi / (std::exp(1.0) - 1.0)).epsilon(1e-15));
  CHECK(emitted_integrand(AbsorptionProfile::narrowband(3.0, 0.1), 1.0, 1.0) == 0.0);
  CHECK(emitted_integrand(black, 1.0, 0.0) == 0.0);
}

TEST_CASE("emitted flux of a gray body") {
  for (double a : {1.0, 0.37}) {
    const auto p = AbsorptionProfile::gray(a);
    CHECK(emitted_flux(p, 1.0).flux ==
          doctest::Approx(a * oracle::black_body_flux(1.0)).epsilon(1e-9));
    CHECK(emitted_flux(p, 2.0).flux ==
          doctest::Approx(a * oracle::black_body_flux(2.0)).epsilon(1e-9));
  }
  CHECK(emitted_flux(AbsorptionProfile::gray(1.0), 1.0).flux ==
        doctest::Approx(20.4013).epsilon(1e-5));
  CHECK(emitted_flux(AbsorptionProfile::gray(1.0), 2.0).flux ==
        doctest::Approx(326.42).epsilon(1e-4));
}

TEST_CASE("emitted flux vanishes as T -> 0") {
  CHECK(emitted_flux(AbsorptionProfile::gray(1.0), 1e-3).flux < 1e-10);
  CHECK(emitted_flux(AbsorptionProfile::narrowband(3.0, 0.1), 1e-3).flux == 0.0);
  CHECK(emitted_flux(five_segment(), 1e-3).flux < 1e-100);
  CHECK_THROWS_AS(emitted_flux(AbsorptionProfile::gray(1.0), 0.0), DomainError);
}

TEST_CASE("absorbed integrand") {
  const auto black = AbsorptionProfile::gray(1.0);
  // beta = 0 reduces to 2 A w^3 sin^2 n(w/T0).
  const double th = 0.7;
  CHECK(absorbed_integrand(black, make_boost(0.0), 1.3, 2.0, th) ==
        doctest::Approx(2.0 * 8.0 * std::sin(th) * std::sin(th) /
                        std::expm1(2.0 / 1.3))
            .epsilon(1e-14));
  // Sideways pencil at beta = 0.6: 2 gamma^-3 n(1 / 1.25).
  const double expected = 2.0 / std::pow(1.25, 3) / std::expm1(0.8);
  CHECK(absorbed_integrand(black, make_boost(0.6), 1.0, 1.0, oracle::pi / 2) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.83555).epsilon(1e-5));
  CHECK(absorbed_integrand(AbsorptionProfile::narrowband(3.0, 0.1),
                           make_boost(0.6), 1.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("absorbed flux of a gray body") {
  // Substituting w = gamma (1 + beta cos) w0 gives a * gamma * pi^5/15 * T0^4.
  for (double beta : {0.0, 0.3, 0.6, 0.9}) {
    for (double t0 : {0.5, 1.0, 2.0}) {
      const double g = oracle::gamma_of(beta);
      CHECK(absorbed_flux(AbsorptionProfile::gray(0.37), make_boost(beta), t0).flux ==
            doctest::Approx(0.37 * g * oracle::black_body_flux(t0)).epsilon(1e-8));
    }
  }
  CHECK(absorbed_flux(AbsorptionProfile::gray(1.0), make_boost(0.6), 1.0).flux ==
        doctest::Approx(25.5017).epsilon(1e-5));
}

TEST_CASE("absorbed flux of a band against a product-rule oracle") {
  const auto band = AbsorptionProfile::narrowband(2.0, 0.5);
  const auto got = absorbed_flux(band, make_boost(0.6), 1.0);
  const double ref = oracle::absorbed_flux_window(2.0, 2.5, 0.6, 1.0, 800, 3000);
  CHECK(got.flux == doctest::Approx(ref).epsilon(1e-6));
  CHECK(got.error_estimate >= 0.0);
  CHECK(got.error_estimate <= 1e-8 * got.flux);
}

TEST_CASE("absorbed flux vanishes as T0 -> 0") {
  CHECK(absorbed_flux(AbsorptionProfile::narrowband(3.0, 0.1), make_boost(0.6),
                      1e-3)
            .flux == 0.0);
  CHECK(absorbed_flux(AbsorptionProfile::gray(1.0), make_boost(0.6), 1e-3).flux <
        1e-10);
  CHECK_THROWS_AS(absorbed_flux(AbsorptionProfile::gray(1.0), make_boost(0.6), 0.0),
                  DomainError);
}

TEST_CASE("rest-frame identity") {
  const AbsorptionProfile profiles[] = {AbsorptionProfile::gray(1.0),
                                        AbsorptionProfile::gray(0.37),
                                        AbsorptionProfile::narrowband(2.0, 0.5),
                                        five_segment()};
  for (const auto& p : profiles) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto phi = emitted_flux(p, t);
      const auto phi0 = absorbed_flux(p, make_boost(0.0), t);
      CHECK(std::abs(phi0.flux - phi.flux) <=
            phi.error_estimate + phi0.error_estimate + 1e-13 * phi.flux);
    }
  }
}

TEST_CASE("fluxes increase with temperature") {
  const std::vector<double> temps = {0.25, 0.5, 1.0, 2.0, 4.0};
  const AbsorptionProfile profiles[] = {AbsorptionProfile::gray(0.5),
                                        AbsorptionProfile::narrowband(2.0, 0.5),
                                        five_segment()};
  for (const auto& p : profiles) {
    for (std::size_t i = 1; i < temps.size(); ++i) {
      CHECK(emitted_flux(p, temps[i]).flux > emitted_flux(p, temps[i - 1]).flux);
    }
    for (double beta : {0.0, 0.3, 0.6, 0.9}) {
      const Boost b = make_boost(beta);
      for (std::size_t i = 1; i < temps.size(); ++i) {
        CHECK(absorbed_flux(p, b, temps[i]).flux >
              absorbed_flux(p, b, temps[i - 1]).flux);
      }
    }
  }
}

TEST_CASE("fluxes are linear in the absorptivity") {
  const auto band = AbsorptionProfile::narrowband(2.0, 0.5);
  const auto pw = five_segment();
  for (double c : {0.1, 0.5, 0.9}) {
    CHECK(emitted_flux(pw.scaled(c), 1.0).flux ==
          doctest::Approx(c * emitted_flux(pw, 1.0).flux).epsilon(1e-12));
    CHECK(absorbed_flux(band.scaled(c), make_boost(0.6), 1.0).flux ==
          doctest::Approx(c * absorbed_flux(band, make_boost(0.6), 1.0).flux)
              .epsilon(1e-10));
  }
}
