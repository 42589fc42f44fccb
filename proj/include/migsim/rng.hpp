#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace migsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent seed for a named sub-stream (per policy, per
// repetition, ...) so that runs sharing a base seed stay decorrelated.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream));
}

// Seeded generator with hand-rolled draws. mt19937_64 output is pinned by
// the standard and the draw functions below avoid std::*_distribution,
// whose output is implementation-defined; identical seeds give identical
// streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::size_t index(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::size_t>(x % range);
  }

  double exponential(double mean) { return -mean * std::log(1.0 - real01()); }

  // Exponential duration in whole rounds, floored at one round.
  long exp_rounds(double mean) {
    const long r = std::lround(exponential(mean));
    return r < 1 ? 1 : r;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace migsim
