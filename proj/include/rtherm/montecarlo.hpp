#pragma once

// Monte Carlo estimates of the two fluxes, used as an oracle independent of
// the quadratures.
//
// Emitted flux: Phi(T) = (pi^5/15) T^4 E[A(w)], w ~ Planck(T).
//
// Absorbed flux: substituting w = gamma (1 + beta cos th) w0 in the double
// integral turns w^3 dw (1 + beta cos th)^-3 gamma^-3 into
// gamma (1 + beta cos th) w0^3 dw0 and the occupation into n(w0 / T0), so
//   Phi0(T0) = 2 gamma Int dth sin^2 (1 + beta cos th)
//              Int dw0 w0^3 n(w0/T0) A(gamma (1 + beta cos th) w0)
//            = gamma (pi^5/15) T0^4 E[(1 + beta cos th) A(w)],
// with w0 ~ Planck(T0) and th ~ (2/pi) sin^2 th independently.
//
// Random numbers come from xoshiro256** (Blackman & Vigna), seeded through
// splitmix64. Samples are drawn in fixed chunks of kChunkSize, each chunk
// with its own stream derived from (seed, chunk index), and chunk statistics
// are merged in index order, so results do not depend on the worker count.

#include <array>
#include <cstdint>

#include "rtherm/core.hpp"

namespace rtherm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1].
  double uniform_positive();

 private:
  std::array<std::uint64_t, 4> s_;
};

// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

inline constexpr std::uint64_t kChunkSize = 1u << 16;
inline constexpr std::uint64_t kMinSamples = 1000;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Exact draw from the density proportional to w^3 / (exp(w/T) - 1): pick
// the series index n with probability proportional to n^-4, then
// w ~ Gamma(4, T/n).
double sample_planck_frequency(Rng& rng, double temperature);

// Exact draw from (2/pi) sin^2 th on [0, pi] by rejection from uniform.
double sample_angle(Rng& rng);

McEstimate mc_emitted_flux(const AbsorptionProfile& profile, double temperature,
                           std::uint64_t n_samples, std::uint64_t seed,
                           unsigned workers = 1);

McEstimate mc_absorbed_flux(const AbsorptionProfile& profile,
                            const Boost& boost, double t0,
                            std::uint64_t n_samples, std::uint64_t seed,
                            unsigned workers = 1);

}  // namespace rtherm
