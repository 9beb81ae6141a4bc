#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cadet/errors.hpp"

namespace cadet {

/// One splitmix64 step; also the basis for stateless hash-style draws.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derive an independent stream seed from (seed, stream index). Used to give
/// each reset interval, scene, and sensor its own reproducible stream.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0x9e3779b97f4a7c15ull;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ull);
}

/// Stateless uniform draw in [0, 1) keyed by up to three indices. Schedule
/// independent: the result depends only on the key, never on call order.
inline double hash_uniform(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0) {
  std::uint64_t s = derive_seed(seed, a) ^ (b * 0xd1342543de82ef95ull);
  const std::uint64_t bits = splitmix64(s);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Deterministic random source: a fixed-algorithm engine plus hand-rolled
/// distributions, so streams replay identically across platforms and
/// standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] via rejection-free scaling.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw Error("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi) - lo + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  /// Poisson by inverse-CDF product (exact for the small means used here).
  int poisson(double mean) {
    if (mean < 0) throw Error("poisson: negative mean");
    if (mean == 0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  /// Standard normal via Box-Muller (one value per call, cached pair unused
  /// to keep the draw count predictable).
  double normal(double mu = 0.0, double sigma = 1.0) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cadet
