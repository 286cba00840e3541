#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rank1 {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic stream for (seed, index). mt19937_64 is fully specified by
// the standard; the conversions to double below are done by hand so the
// draws do not depend on the standard library's distributions.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index) : gen_(splitmix64(seed ^ splitmix64(index))) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  double exponential() { return -std::log(1.0 - uniform()); }
  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rank1
