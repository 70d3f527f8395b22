#include "esids/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esids {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double RandomStream::uniform01() {
  return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::uniform_u64(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;  // 0 means the full 2^64 range
  const std::uint64_t r = raw();
  return span == 0 ? r : lo + r % span;
}

std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k,
                                         RandomStream& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_distinct: k out of range");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(
                                  rng.uniform_u64(0, n - 1 - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace esids
