#include "rtherm/composite_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtherm/errors.hpp"

namespace rtherm {

namespace {

void require_t0(double t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) {
    throw DomainError("bath temperature must be positive and finite, got " +
                      std::to_string(t0));
  }
}

}  // namespace

double tilde_temperature(const Boost& boost, double t0) {
  require_t0(t0);
  return boost.gamma() * t0;
}

double tilde_entropy(const EquationOfState& eos, double energy, double volume,
                     const Boost& boost, double t0) {
  return eos.entropy(energy, volume) - energy / tilde_temperature(boost, t0);
}

TildeEntropyMaximum maximize_tilde_entropy(const EquationOfState& eos,
                                           double volume, const Boost& boost,
                                           double t0) {
  const double t_tilde = tilde_temperature(boost, t0);
  const double e_star = eos.energy_of_temperature(t_tilde);
  const double s_max = tilde_entropy(eos, e_star, volume, boost, t0);
  const double helmholtz = e_star - t_tilde * eos.entropy(e_star, volume);
  const double identity_gap = s_max + helmholtz / t_tilde;
  if (std::abs(identity_gap) > 1e-12 * std::max(1.0, std::abs(s_max))) {
    throw SolverError("tilted-entropy maximum violates the Helmholtz identity");
  }
  return TildeEntropyMaximum{e_star, s_max};
}

double composite_entropy_value(const EquationOfState& eos,
                               const CompositeState& state, const Boost& boost,
                               double t0) {
  return tilde_entropy(eos, state.energy, state.volume, boost, t0) -
         boost.beta() * state.p0_parallel / t0;
}

std::vector<ProbeRow> unboundedness_probe(const EquationOfState& eos,
                                          double volume, const Boost& boost,
                                          double t0,
                                          const std::vector<double>& magnitudes) {
  if (boost.beta() == 0.0) {
    throw DegenerateProbeError(
        "composite entropy is bounded at rest; probe needs beta > 0");
  }
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] >= 0.0) || !std::isfinite(magnitudes[i])) {
      throw DomainError("momentum magnitudes must be finite and non-negative");
    }
    if (i > 0 && !(magnitudes[i] > magnitudes[i - 1])) {
      throw DomainError("momentum magnitudes must be strictly increasing");
    }
  }
  const TildeEntropyMaximum peak = maximize_tilde_entropy(eos, volume, boost, t0);
  std::vector<ProbeRow> rows;
  rows.reserve(magnitudes.size());
  for (double p : magnitudes) {
    // The tilt does not depend on E, so the sup over E sits at E*.
    const CompositeState at_peak{peak.e_star, volume, -p, 0.0};
    rows.push_back({p, composite_entropy_value(eos, at_peak, boost, t0)});
  }
  return rows;
}

double energy_conservation_residual(double delta_e, double delta_e0,
                                    double delta_p0_parallel,
                                    const Boost& boost) {
  return delta_e + boost.gamma() * (delta_e0 + boost.beta() * delta_p0_parallel);
}

}  // namespace rtherm
