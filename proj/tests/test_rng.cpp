#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "esids/rng.hpp"

using namespace esids;

namespace {

// Reference splitmix64, written out independently from the published
// algorithm so a typo in the library constant cannot self-verify.
std::uint64_t reference_splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("splitmix64 matches an independent reference") {
  for (std::uint64_t x : {0ULL, 1ULL, 42ULL, 0x9E3779B97F4A7C15ULL,
                          0xFFFFFFFFFFFFFFFFULL, 123456789ULL}) {
    CHECK(splitmix64(x) == reference_splitmix64(x));
  }
}

TEST_CASE("derive_seed spreads a base seed into distinct sub-seeds") {
  CHECK(derive_seed(7, 0) ==
        reference_splitmix64(7 + 1 * 0x9E3779B97F4A7C15ULL));
  CHECK(derive_seed(7, 3) ==
        reference_splitmix64(7 + 4 * 0x9E3779B97F4A7C15ULL));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
}

TEST_CASE("uniform01 is the documented function of raw engine output") {
  RandomStream rng(2024);
  std::mt19937_64 reference(2024);
  for (int i = 0; i < 1000; ++i) {
    const double expected =
        static_cast<double>(reference() >> 11) * 0x1.0p-53;
    const double got = rng.uniform01();
    CHECK(got == expected);
    CHECK(got >= 0.0);
    CHECK(got < 1.0);
  }
}

TEST_CASE("normal is Box-Muller over two uniforms, no caching") {
  RandomStream rng(555);
  std::mt19937_64 reference(555);
  auto ref_uniform = [&] {
    return static_cast<double>(reference() >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < 1000; ++i) {
    const double u1 = ref_uniform();
    const double u2 = ref_uniform();
    const double expected =
        std::sqrt(-2.0 * std::log(1.0 - u1)) *
        std::cos(2.0 * std::numbers::pi * u2);
    CHECK(rng.normal() == expected);
  }
}

TEST_CASE("normal stream has standard-normal moments") {
  RandomStream rng(77);
  const int n = 50000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("uniform_u64 is raw modulo the inclusive span") {
  RandomStream rng(9001);
  std::mt19937_64 reference(9001);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t expected = 20 + reference() % (30 - 20 + 1);
    CHECK(rng.uniform_u64(20, 30) == expected);
  }
  RandomStream full(1);
  std::mt19937_64 full_ref(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(full.uniform_u64(0, 0xFFFFFFFFFFFFFFFFULL) == full_ref());
  }
}

TEST_CASE("uniform_u64 stays within inclusive bounds") {
  RandomStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform_u64(13, 17);
    CHECK(v >= 13);
    CHECK(v <= 17);
  }
}

TEST_CASE("sample_distinct returns k distinct indices below n") {
  RandomStream rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto picks = sample_distinct(8, 3, rng);
    REQUIRE(picks.size() == 3);
    std::set<std::size_t> unique(picks.begin(), picks.end());
    CHECK(unique.size() == 3);
    for (const auto p : picks) CHECK(p < 8);
  }
}

TEST_CASE("sample_distinct with k = n is a permutation") {
  RandomStream rng(11);
  const auto picks = sample_distinct(6, 6, rng);
  std::set<std::size_t> unique(picks.begin(), picks.end());
  CHECK(unique.size() == 6);
}

TEST_CASE("sample_distinct consumes exactly k draws") {
  RandomStream rng(123);
  std::mt19937_64 reference(123);
  (void)sample_distinct(10, 4, rng);
  reference.discard(4);
  CHECK(rng.raw() == reference());

  RandomStream one(321);
  std::mt19937_64 one_ref(321);
  (void)sample_distinct(1, 1, one);  // degenerate pick still burns its draw
  one_ref.discard(1);
  CHECK(one.raw() == one_ref());
}

TEST_CASE("sample_distinct rejects k outside 1..n") {
  RandomStream rng(5);
  CHECK_THROWS_AS(sample_distinct(4, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_distinct(4, 5, rng), std::invalid_argument);
}

TEST_CASE("sample_distinct first pick is uniform over n") {
  RandomStream rng(400);
  int counts[5] = {0, 0, 0, 0, 0};
  const int trials = 50000;
  for (int i = 0; i < trials; ++i) ++counts[sample_distinct(5, 1, rng)[0]];
  for (const int c : counts) {
    CHECK(c > trials / 5 - 600);
    CHECK(c < trials / 5 + 600);
  }
}

TEST_CASE("streams with equal seeds are identical, different seeds diverge") {
  RandomStream a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.raw();
    all_equal = all_equal && va == b.raw();
    any_diff = any_diff || va != c.raw();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}
