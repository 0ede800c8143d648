#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bandit {

// Stable 64-bit mixing so stream derivation does not depend on the standard
// library's std::hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// A named substream of a master seed.  Every consumer of randomness draws
// from its own stream so adding or removing one consumer never perturbs the
// draws seen by another.
class Stream {
 public:
  Stream() : eng_(0) {}
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  static Stream derive(std::uint64_t master, std::string_view purpose) {
    return Stream(splitmix64(master ^ fnv1a(purpose)));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n).  Rejection keeps the draw unbiased.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bandit
