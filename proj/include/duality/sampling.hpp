#pragma once

// Seeded random sampling for the simulated photon-counting experiments.
// Distributions are implemented here rather than taken from <random>
// because the standard library's samplers are implementation-defined;
// these give bit-identical streams for a given seed on any platform.

#include <cmath>
#include <cstdint>
#include <random>

#include "duality/errors.hpp"

namespace duality {

// Deterministic uniform source: mt19937_64 with explicit conversion to
// doubles in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

// Knuth's product-of-uniforms method; exact, O(mean) draws.
inline std::uint64_t poisson_small(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform01();
  } while (p > limit);
  return k - 1;
}

// Transformed rejection with squeeze (Hoermann, PTRS); exact for mean >= 10.
inline std::uint64_t poisson_ptrs(Rng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * loglam - mean - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

}  // namespace detail

inline std::uint64_t sample_poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw ValidationError("Poisson mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? detail::poisson_small(rng, mean) : detail::poisson_ptrs(rng, mean);
}

// Exact Bernoulli-counting binomial sampler, O(n).
inline std::uint64_t sample_binomial(Rng& rng, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("binomial probability must lie in [0, 1]");
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (rng.uniform01() < p) ++k;
  return k;
}

}  // namespace duality
