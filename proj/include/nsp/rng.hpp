#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nsp {

// splitmix64; used to derive independent stream seeds from one master seed.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  return splitmix64(s);
}

// Samplers are pinned here rather than taken from <random> distributions so
// a given seed yields the same draws on every standard library.

inline uint64_t uniform_u64(std::mt19937_64& rng, uint64_t n) {
  // n >= 1; unbiased via rejection
  const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// inclusive [lo, hi]
inline int64_t uniform_int(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(uniform_u64(rng, static_cast<uint64_t>(hi - lo) + 1));
}

// [0, 1)
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double exponential(std::mt19937_64& rng, double mean) {
  return -mean * std::log(1.0 - uniform01(rng));
}

}  // namespace nsp
