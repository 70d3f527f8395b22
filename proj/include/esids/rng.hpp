#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace esids {

// splitmix64 finalizer. Used to spread a base seed into independent
// sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of sub-stream `index` for a run seeded with `base`.
// derive_seed(base, i) = splitmix64(base + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Deterministic random stream.
//
// Every draw is defined directly on top of raw std::mt19937_64 output, so
// the sequence is reproducible bit-for-bit from the seed alone and can be
// re-derived by an independent implementation:
//
//   raw()              one 64-bit engine output
//   uniform01()        (raw() >> 11) * 2^-53, in [0, 1)
//   normal()           Box-Muller from two uniforms:
//                      sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
//   uniform_u64(lo,hi) lo + raw() % (hi - lo + 1), inclusive bounds
//
// std::uniform_real_distribution and friends are deliberately not used;
// their output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }
  double uniform01();
  double normal();
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

// First k entries of a uniformly shuffled 0..n-1, via partial Fisher-Yates.
// Requires 1 <= k <= n. Consumes exactly k draws.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k,
                                         RandomStream& rng);

}  // namespace esids
