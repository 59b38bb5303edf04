#include "rtherm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "rtherm/errors.hpp"

namespace rtherm {

namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
constexpr double kZeta4 = kPi * kPi * kPi * kPi / 90.0;
constexpr double kBlackBody = kPi * kPi * kPi * kPi * kPi / 15.0;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Running mean and sum of squared deviations (Welford).
struct ChunkStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const ChunkStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double delta = o.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += o.m2 + delta * delta * na * nb / total;
    n += o.n;
  }
};

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGolden * (index + 1));
}

// Draws `n_samples` weights in deterministic chunks and reduces them in
// chunk order.
template <class Weight>
ChunkStats sample_chunks(std::uint64_t n_samples, std::uint64_t seed,
                         unsigned workers, const Weight& weight) {
  const std::uint64_t n_chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkStats> chunks(n_chunks);
  auto run = [&](unsigned worker) {
    for (std::uint64_t c = worker; c < n_chunks; c += workers) {
      Rng rng(chunk_seed(seed, c));
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min(n_samples, begin + kChunkSize);
      ChunkStats stats;
      for (std::uint64_t i = begin; i < end; ++i) stats.add(weight(rng));
      chunks[c] = stats;
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  ChunkStats total;
  for (const auto& c : chunks) total.merge(c);
  return total;
}

McEstimate to_estimate(const ChunkStats& stats, double scale,
                       std::uint64_t seed) {
  const double n = static_cast<double>(stats.n);
  const double variance = stats.n > 1 ? stats.m2 / (n - 1.0) : 0.0;
  return McEstimate{scale * stats.mean, scale * std::sqrt(variance / n), stats.n,
                    seed};
}

void check_run(std::uint64_t n_samples, unsigned workers) {
  if (n_samples < kMinSamples) {
    throw DomainError("Monte Carlo needs at least 1000 samples, got " +
                      std::to_string(n_samples));
  }
  if (workers == 0) throw DomainError("worker count must be at least 1");
}

void require_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("temperature must be positive and finite");
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    word = mix64(x);
    x += kGolden;
  }
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * kTwoPow53Inv; }

double Rng::uniform_positive() {
  return static_cast<double>((next() >> 11) + 1) * kTwoPow53Inv;
}

double sample_planck_frequency(Rng& rng, double temperature) {
  require_temperature(temperature);
  const double target = rng.uniform() * kZeta4;
  double cumulative = 1.0;
  double n = 1.0;
  // The cap only matters if target rounds into the last ulp below zeta(4).
  while (cumulative <= target && n < 1e6) {
    n += 1.0;
    cumulative += 1.0 / (n * n * n * n);
  }
  const double product = rng.uniform_positive() * rng.uniform_positive() *
                         rng.uniform_positive() * rng.uniform_positive();
  return -(temperature / n) * std::log(product);
}

double sample_angle(Rng& rng) {
  for (;;) {
    const double theta = kPi * rng.uniform();
    const double s = std::sin(theta);
    if (rng.uniform() < s * s) return theta;
  }
}

McEstimate mc_emitted_flux(const AbsorptionProfile& profile, double temperature,
                           std::uint64_t n_samples, std::uint64_t seed,
                           unsigned workers) {
  require_temperature(temperature);
  check_run(n_samples, workers);
  const ChunkStats stats =
      sample_chunks(n_samples, seed, workers, [&](Rng& rng) {
        return profile(sample_planck_frequency(rng, temperature));
      });
  const double t2 = temperature * temperature;
  return to_estimate(stats, kBlackBody * t2 * t2, seed);
}

McEstimate mc_absorbed_flux(const AbsorptionProfile& profile,
                            const Boost& boost, double t0,
                            std::uint64_t n_samples, std::uint64_t seed,
                            unsigned workers) {
  require_temperature(t0);
  check_run(n_samples, workers);
  const double beta = boost.beta();
  const double g = boost.gamma();
  const ChunkStats stats =
      sample_chunks(n_samples, seed, workers, [&](Rng& rng) {
        const double omega0 = sample_planck_frequency(rng, t0);
        const double d = 1.0 + beta * std::cos(sample_angle(rng));
        return d * profile(g * d * omega0);
      });
  const double t2 = t0 * t0;
  return to_estimate(stats, g * kBlackBody * t2 * t2, seed);
}

}  // namespace rtherm
