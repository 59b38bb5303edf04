#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rtherm/dynamics.hpp"
#include "rtherm/equilibrium.hpp"
#include "rtherm/radiative_flux.hpp"

using namespace rtherm;

namespace {

const double kGrayQuarter = std::pow(1.25, 0.25);

void check_invariants(const Trajectory& tr) {
  REQUIRE(!tr.samples.empty());
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const auto& s = tr.samples[i];
    CHECK(s.energy > 0.0);
    CHECK(s.temperature == tr.eos.temperature(s.energy));
    if (i > 0) {
      const auto& prev = tr.samples[i - 1];
      CHECK(s.t > prev.t);
      CHECK(s.free_energy <= prev.free_energy + 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("energy rate") {
  const auto black = AbsorptionProfile::gray(1.0);
  const double stefan = oracle::black_body_flux(1.0);
  CHECK(std::abs(energy_rate(black, make_boost(0.0), 1.0, 1.0)) <= 1e-9 * stefan);
  CHECK(energy_rate(black, make_boost(0.0), 1.0, 0.5) ==
        doctest::Approx(stefan * (1 - 0.0625)).epsilon(1e-9));
  CHECK(energy_rate(black, make_boost(0.0), 1.0, 0.5) == doctest::Approx(19.126).epsilon(1e-4));
  CHECK(std::abs(energy_rate(black, make_boost(0.6), 1.0, kGrayQuarter)) <=
        1e-8 * stefan);
  CHECK_THROWS_AS(energy_rate(black, make_boost(0.6), 1.0, 0.0), DomainError);
}

TEST_CASE("energy rate sign structure") {
  const AbsorptionProfile profiles[] = {AbsorptionProfile::gray(1.0),
                                        AbsorptionProfile::narrowband(2.0, 0.5)};
  for (const auto& p : profiles) {
    const Boost b = make_boost(0.6);
    const double t_bar = solve_equilibrium_temperature(p, b, 1.0, 1e-12).t_bar;
    for (double r : {0.3, 0.9, 0.999}) {
      CHECK(energy_rate(p, b, 1.0, r * t_bar) > 0.0);
    }
    for (double r : {1.001, 1.1, 3.0}) {
      CHECK(energy_rate(p, b, 1.0, r * t_bar) < 0.0);
    }
  }
}

TEST_CASE("free energy") {
  const auto eos = EquationOfState::constant_cv(1.0, 1.0, 0.0);
  CHECK(lyapunov_value(eos, 1.0, 1.0, 1.0) == 1.0);
  CHECK(lyapunov_value(eos, std::exp(1.0), 1.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(lyapunov_value(eos, std::exp(1.0), 1.0, 1.0) == doctest::Approx(1.71828).epsilon(1e-5));
  // Minimum at T(E) = T_bar, here E = 2.
  const double at_min = lyapunov_value(eos, 2.0, 1.0, 2.0);
  for (double e : {1.5, 1.9, 2.1, 3.0}) {
    CHECK(lyapunov_value(eos, e, 1.0, 2.0) > at_min);
  }
  CHECK_THROWS_AS(lyapunov_value(eos, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(lyapunov_value(eos, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("free energy rate") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(1.0);
  const double stefan = oracle::black_body_flux(1.0);
  CHECK(lyapunov_rate(black, eos, 1.0, 1.0) == 0.0);
  CHECK(lyapunov_rate(black, eos, 0.5, 1.0) ==
        doctest::Approx(-stefan * (1 - 0.0625)).epsilon(1e-9));
  CHECK(lyapunov_rate(black, eos, 0.5, 1.0) == doctest::Approx(-19.126).epsilon(1e-4));
  CHECK(lyapunov_rate(black, eos, 2.0, 1.0) ==
        doctest::Approx(0.5 * stefan * (1 - 16)).epsilon(1e-9));
  CHECK(lyapunov_rate(black, eos, 2.0, 1.0) == doctest::Approx(-153.0).epsilon(1e-3));
}

TEST_CASE("free energy rate is the chain rule product") {
  const AbsorptionProfile profiles[] = {AbsorptionProfile::gray(1.0),
                                        AbsorptionProfile::narrowband(2.0, 0.5)};
  const EquationOfState laws[] = {EquationOfState::constant_cv(3.0),
                                  EquationOfState::power_law(1.0, 0.5)};
  const Boost b = make_boost(0.6);
  for (const auto& p : profiles) {
    const double t_bar = solve_equilibrium_temperature(p, b, 1.0, 1e-13).t_bar;
    for (const auto& eos : laws) {
      for (double r : {0.4, 0.8, 1.3, 2.5}) {
        const double e = eos.energy_of_temperature(r * t_bar);
        const double t = eos.temperature(e);
        const double chain =
            (1.0 - t_bar / t) * energy_rate(p, b, 1.0, t, 1e-13);
        CHECK(lyapunov_rate(p, eos, e, t_bar, 1e-13) ==
              doctest::Approx(chain).epsilon(1e-10));
        CHECK(lyapunov_rate(p, eos, e, t_bar) < 0.0);
      }
    }
  }
}

TEST_CASE("relaxation of a gray body") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(100.0);
  const Boost b = make_boost(0.6);
  for (double t_init : {0.5, 2.0}) {
    const auto tr = evolve(black, b, 1.0, eos, eos.energy_of_temperature(t_init),
                           1.0, 1e4);
    check_invariants(tr);
    CHECK(tr.samples.size() > 2);
    CHECK(tr.t_bar == doctest::Approx(kGrayQuarter).epsilon(1e-12));
    CHECK(tr.samples.back().temperature == doctest::Approx(1.057371).epsilon(1e-6));
    CHECK(tr.terminal_gap() < 1e-8);
    CHECK(tr.samples.front().t == 0.0);
    CHECK(tr.samples.front().temperature == doctest::Approx(t_init).epsilon(1e-15));
  }
}

TEST_CASE("start at the fixed point") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(100.0);
  const Boost b = make_boost(0.6);
  const double t_bar = solve_equilibrium_temperature(black, b, 1.0, 1e-12).t_bar;
  const auto tr = evolve(black, b, 1.0, eos, eos.energy_of_temperature(t_bar), 1.0, 10.0);
  CHECK(tr.samples.size() == 1);
  CHECK(tr.terminal_gap() < 1e-8);
}

TEST_CASE("terminal temperature does not depend on the equation of state") {
  const AbsorptionProfile profiles[] = {AbsorptionProfile::gray(1.0),
                                        AbsorptionProfile::narrowband(2.0, 0.5)};
  const Boost b = make_boost(0.6);
  for (const auto& p : profiles) {
    const auto cv = EquationOfState::constant_cv(10.0);
    const auto pw = EquationOfState::power_law(2.0, 0.5);
    const auto a = evolve(p, b, 1.0, cv, cv.energy_of_temperature(0.5), 1.0, 1e6);
    const auto c = evolve(p, b, 1.0, pw, pw.energy_of_temperature(2.5), 1.0, 1e6);
    check_invariants(a);
    check_invariants(c);
    CHECK(a.samples.back().temperature ==
          doctest::Approx(c.samples.back().temperature).epsilon(1e-6));
  }
}

TEST_CASE("free energy matches finite differences along the trajectory") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(100.0);
  const Boost b = make_boost(0.6);
  const auto tr = evolve(black, b, 1.0, eos, eos.energy_of_temperature(0.5), 1.0, 1e4);
  REQUIRE(tr.samples.size() > 10);
  // Midpoint rule over each step; the error is O(h^2) relative to the step.
  int checked = 0;
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    const auto& p = tr.samples[i - 1];
    const auto& q = tr.samples[i];
    const double h = q.t - p.t;
    const double e_mid = 0.5 * (p.energy + q.energy);
    const double rate = lyapunov_rate(black, eos, e_mid, tr.t_bar, 1e-12);
    const double df = q.free_energy - p.free_energy;
    if (std::abs(df) < 1e-9) continue;
    CHECK(df == doctest::Approx(rate * h).epsilon(0.05));
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("time budget can stop the run early") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(100.0);
  const auto tr = evolve(black, make_boost(0.6), 1.0, eos,
                         eos.energy_of_temperature(0.5), 1.0, 0.01);
  check_invariants(tr);
  CHECK(tr.samples.back().t == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(tr.terminal_gap() > 1e-3);
}

TEST_CASE("evolve argument checks") {
  const auto black = AbsorptionProfile::gray(1.0);
  const auto eos = EquationOfState::constant_cv(100.0);
  CHECK_THROWS_AS(evolve(black, make_boost(0.6), 1.0, eos, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(evolve(black, make_boost(0.6), 1.0, eos, 50.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(evolve(black, make_boost(0.6), -1.0, eos, 50.0, 1.0, 1.0), DomainError);
}

TEST_CASE("evolution is deterministic") {
  const auto band = AbsorptionProfile::narrowband(2.0, 0.5);
  const auto eos = EquationOfState::power_law(1.0, 0.5);
  const auto a = evolve(band, make_boost(0.3), 1.0, eos, 0.5, 1.0, 1e3);
  const auto c = evolve(band, make_boost(0.3), 1.0, eos, 0.5, 1.0, 1e3);
  REQUIRE(a.samples.size() == c.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].t == c.samples[i].t);
    CHECK(a.samples[i].energy == c.samples[i].energy);
  }
}
