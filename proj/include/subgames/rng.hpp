#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace subgames {

// One avalanche round of splitmix64. Used for seed derivation only.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seedable, splittable random stream. split(i) is a pure function of
// (base seed, i), so trials can derive independent streams from a master
// seed and stay reproducible no matter how work is scheduled.
//
// Bounded draws go through below()/unit() instead of std:: distributions,
// which are not pinned down by the standard; the engine itself
// (mt19937_64) is, so identical seeds give identical streams everywhere.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  SplitRng split(std::uint64_t index) const {
    return SplitRng(mix64(seed_ ^ mix64(index + 0x51ed2701)));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SplitRng::below: empty range");
    const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= reject_below) return x % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace subgames
