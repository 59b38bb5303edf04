#pragma once

// Relaxation of the thermometer energy under the net radiative exchange
//   dE/dt = Phi0(T0) - Phi(T(E))
// and the free energy F(E) = E - T_bar S(E, V), which must never increase
// along a trajectory.

#include <vector>

#include "rtherm/core.hpp"
#include "rtherm/errors.hpp"
#include "rtherm/quadrature.hpp"

namespace rtherm {

struct TrajectorySample {
  double t;
  double energy;
  double temperature;
  double free_energy;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  AbsorptionProfile profile;
  Boost boost;
  double t0;
  EquationOfState eos;
  double volume;
  double t_bar;

  // |T - T_bar| / T_bar at the last sample.
  double terminal_gap() const;
};

// Step size fell below the resolvable limit. Holds everything integrated
// up to that point.
class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

inline constexpr double kDefaultStepTol = 1e-8;
inline constexpr double kConvergenceGap = 1e-8;
// Tolerance used for the flux quadratures and the fixed-point solve that
// drive the dynamics.
inline constexpr double kDynamicsFluxTol = 1e-12;

// Phi0(T0) - Phi(T).
double energy_rate(const AbsorptionProfile& profile, const Boost& boost,
                   double t0, double temperature,
                   double rel_tol = kDefaultRelTol);

double lyapunov_value(const EquationOfState& eos, double energy, double volume,
                      double t_bar);

// (1 - T_bar/T) (Phi(T_bar) - Phi(T)) with T = T(E). Never positive.
double lyapunov_rate(const AbsorptionProfile& profile,
                     const EquationOfState& eos, double energy, double t_bar,
                     double rel_tol = kDefaultRelTol);

// Integrates with the Dormand-Prince 5(4) pair under relative error control
// step_tol, recording every accepted step. Stops at t_max or as soon as
// |T - T_bar| / T_bar < kConvergenceGap.
Trajectory evolve(const AbsorptionProfile& profile, const Boost& boost,
                  double t0, const EquationOfState& eos, double initial_energy,
                  double volume, double t_max,
                  double step_tol = kDefaultStepTol);

}  // namespace rtherm
