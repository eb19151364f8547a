#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "coverlink/smith.hpp"
#include "oracles.hpp"

using namespace coverlink;

namespace {

AbelianGroupInvariants invariants(std::vector<long> factors, std::size_t free_rank) {
  AbelianGroupInvariants g;
  for (long f : factors) g.invariant_factors.emplace_back(f);
  g.free_rank = free_rank;
  return g;
}

}  // namespace

TEST(Smith, FreeGroupHasNoRelations) {
  EXPECT_EQ(cokernel_invariants(IntMatrix{}, 2), invariants({}, 2));
}

TEST(Smith, HandComputedCases) {
  // a^2 b^-4, [a, b]
  EXPECT_EQ(cokernel_invariants(IntMatrix{{2, -4}, {0, 0}}, 2), invariants({2}, 1));
  EXPECT_EQ(cokernel_invariants(IntMatrix{{4}}, 1), invariants({4}, 0));
  EXPECT_EQ(cokernel_invariants(IntMatrix{{2, 0}, {0, 3}}, 2), invariants({6}, 0));
  EXPECT_EQ(cokernel_invariants(IntMatrix{{-1, 2}, {2, -1}}, 2), invariants({3}, 0));
  EXPECT_EQ(cokernel_invariants(IntMatrix{{6, 0}, {0, 4}}, 2), invariants({2, 12}, 0));
  EXPECT_TRUE(cokernel_invariants(IntMatrix{{1, 0}, {0, -1}}, 2).is_trivial());
}

TEST(Smith, OverflowFallsBackToBigIntegers) {
  // |det| is around 2^120, so some diagonal entry cannot fit in 64 bits.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> entry(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
  IntMatrix m(3, std::vector<std::int64_t>(3));
  for (auto& row : m)
    for (auto& v : row) v = entry(rng);
  const auto g = cokernel_invariants(m, 3);
  EXPECT_EQ(g.free_rank, 0u);
  BigInt product = 1;
  for (const auto& f : g.invariant_factors) product *= f;
  const BigInt det = determinant(m);
  EXPECT_EQ(product, det < 0 ? BigInt(-det) : det);
  EXPECT_GT(product, BigInt(std::numeric_limits<std::int64_t>::max()));
}

TEST(Smith, AgreesWithNaiveOracleOnRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 7), entry(-6, 6), coin(0, 2);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, std::vector<std::int64_t>(c));
    for (auto& row : m)
      for (auto& v : row) v = coin(rng) ? entry(rng) : 0;
    const auto got = cokernel_invariants(m, c);
    const auto [factors, free_rank] = oracle::naive_cokernel(m, c);
    EXPECT_EQ(got.invariant_factors, factors);
    EXPECT_EQ(got.free_rank, free_rank);
    const auto [minor_factors, minor_rank] = oracle::minors_cokernel(m, c);
    EXPECT_EQ(got.invariant_factors, minor_factors);
    EXPECT_EQ(got.free_rank, minor_rank);
  }
}

TEST(Smith, DivisibilityChainIsCanonical) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(5, std::vector<std::int64_t>(5));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    const auto g = cokernel_invariants(m, 5);
    for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
      EXPECT_GE(g.invariant_factors[i], 2);
      if (i + 1 < g.invariant_factors.size()) {
        EXPECT_EQ(g.invariant_factors[i + 1] % g.invariant_factors[i], 0);
      }
    }
  }
}

TEST(Smith, DeterminantMatchesLeibniz) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    IntMatrix m(n, std::vector<std::int64_t>(n));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    EXPECT_EQ(determinant(m), oracle::leibniz_determinant(m));
  }
}

TEST(Smith, ToString) {
  EXPECT_EQ(invariants({}, 0).to_string(), "0");
  EXPECT_EQ(invariants({4}, 0).to_string(), "Z_4");
  EXPECT_EQ(invariants({2}, 1).to_string(), "Z + Z_2");
  EXPECT_EQ(invariants({}, 2).to_string(), "Z^2");
}
