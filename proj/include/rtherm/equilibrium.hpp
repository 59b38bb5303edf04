#pragma once

// Registered temperature of the clamped thermometer: the unique T_bar at
// which the emitted flux balances the absorbed one, Phi(T_bar) = Phi0(T0).

#include "rtherm/core.hpp"
#include "rtherm/quadrature.hpp"

namespace rtherm {

struct EquilibriumResult {
  double t_bar = 0.0;
  // Phi(t_bar) - Phi0(T0).
  double residual = 0.0;
  int iterations = 0;
};

inline constexpr int kMaxSolverIterations = 200;
inline constexpr int kMaxBracketExpansions = 60;

// Brackets the root by doubling or halving from T0, then refines with a
// safeguarded false-position iteration on log Phi versus log T. Stops once
// |residual| <= rel_tol * Phi0(T0). The fluxes are integrated at
// rel_tol / 100 (floored at the quadrature minimum).
EquilibriumResult solve_equilibrium_temperature(
    const AbsorptionProfile& profile, const Boost& boost, double t0,
    double rel_tol = kDefaultRelTol);

// Zero-width band at frequency f: solves
//   n(f / T_bar) = 2/(pi gamma^3) Int_0^pi sin^2 (1 + beta cos)^-3
//                  n(f / (gamma T0 (1 + beta cos))) dth
// with the right side by quadrature (evaluated in log space) and the left
// inverted in closed form.
double narrowband_equilibrium(double f, const Boost& boost, double t0,
                              double rel_tol = kDefaultRelTol);

// f -> 0 limit: 2/(pi gamma^2) T0 Int_0^pi sin^2 (1 + beta cos)^-2 dth.
double low_frequency_limit(const Boost& boost, double t0);

// f -> inf limit: T0 sqrt((1 + beta) / (1 - beta)).
double high_frequency_limit(const Boost& boost, double t0);

struct ComparatorLaws {
  double planck_einstein;  // T0 / gamma
  double ott_kibble;       // gamma T0
  double invariant;        // T0
};

ComparatorLaws comparator_laws(const Boost& boost, double t0);

}  // namespace rtherm
