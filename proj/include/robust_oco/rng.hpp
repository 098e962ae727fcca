#pragma once

#include <cstdint>
#include <random>

namespace robust_oco {

/// Seedable, splittable generator. Draws are built from raw 64-bit words so
/// streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller, no cached second draw).
  double normal();

  /// Independent child stream; the same (seed, stream) pair always gives the
  /// same child.
  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL))); }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace robust_oco
