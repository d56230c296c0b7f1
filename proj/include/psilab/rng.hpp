#pragma once

#include <cstdint>
#include <random>

namespace psilab {

// Deterministic RNG used by every sampler in the library. uniform() maps raw
// engine output to doubles directly instead of going through
// std::uniform_real_distribution, whose stream is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n) { return std::size_t(eng_() % n); }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace psilab
