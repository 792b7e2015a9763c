#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ccpp/rng.hpp"

namespace {

TEST(Rng, MatchesStandardEngineStream) {
  ccpp::Rng rng(2024);
  std::mt19937_64 reference(2024);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(rng.next(), reference());
}

TEST(Rng, Uniform01UsesTop53Bits) {
  ccpp::Rng rng(5);
  std::mt19937_64 reference(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    EXPECT_EQ(u, static_cast<double>(reference() >> 11) * 0x1.0p-53);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  ccpp::Rng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, NormalMoments) {
  ccpp::Rng rng(10);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, AlgorithmIdentifier) { EXPECT_EQ(ccpp::Rng::algorithm, "mt19937_64/u53"); }

}  // namespace
