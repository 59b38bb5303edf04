#pragma once

// Entropy bookkeeping for the composite of the clamped thermometer and the
// moving reservoir, measured in the thermometer frame.
//
// Energy in the thermometer frame is conserved:
//   dE + gamma (dE0 + beta dP0) = 0,
// where dE0, dP0 are the reservoir's energy and momentum increments in its
// rest frame (momentum only along the velocity matters). Eliminating dE0
// gives the composite entropy, up to an additive constant fixed to 0 here:
//   S_c = S(E, V) - E / (gamma T0) - beta P0 / T0.
// The first two terms are bounded above; the last one is not.

#include <vector>

#include "rtherm/core.hpp"

namespace rtherm {

struct CompositeState {
  double energy;
  double volume;
  // Reservoir momentum increment along the velocity, rest frame.
  double p0_parallel;
  // Reservoir energy increment, rest frame.
  double e0;
};

double tilde_temperature(const Boost& boost, double t0);

double tilde_entropy(const EquationOfState& eos, double energy, double volume,
                     const Boost& boost, double t0);

struct TildeEntropyMaximum {
  double e_star;
  double s_tilde_max;
};

// Maximum of S(E, V) - E / T_tilde over E, reached at T(E*) = T_tilde. Also
// checks the Helmholtz identity s_tilde_max = -(E* - T_tilde S(E*)) / T_tilde.
TildeEntropyMaximum maximize_tilde_entropy(const EquationOfState& eos,
                                           double volume, const Boost& boost,
                                           double t0);

double composite_entropy_value(const EquationOfState& eos,
                               const CompositeState& state, const Boost& boost,
                               double t0);

struct ProbeRow {
  double p0_magnitude;
  double sup_entropy;
};

// sup over E of S_c with the reservoir momentum antiparallel to the
// velocity, for each magnitude. Throws DegenerateProbeError at beta = 0.
std::vector<ProbeRow> unboundedness_probe(const EquationOfState& eos,
                                          double volume, const Boost& boost,
                                          double t0,
                                          const std::vector<double>& magnitudes);

double energy_conservation_residual(double delta_e, double delta_e0,
                                    double delta_p0_parallel,
                                    const Boost& boost);

}  // namespace rtherm
