#include <gtest/gtest.h>

#include "pfqed/errors.hpp"
#include "pfqed/smx.hpp"

using namespace pfqed;

TEST(TCount, GoldenValues) {
  EXPECT_EQ(t_count(equal_partition(16, 1)), 192);
  EXPECT_EQ(t_count(equal_partition(16, 2)), 96);
  EXPECT_EQ(t_count(equal_partition(2, 1)), 0);
}

TEST(TCount, UnequalSplit) {
  // widths (1, 3) of log2(16) = 4: 2*0 + 8*8 + 16*4.
  EXPECT_EQ(t_count(make_partition(16, {1, 3})), 128);
  EXPECT_EQ(ancilla_count(make_partition(16, {1, 3})), 10);
}

TEST(TCount, CnotPairsWithT) {
  EXPECT_EQ(cnot_count(equal_partition(16, 1)), 16 * 13);
  EXPECT_EQ(cnot_count(equal_partition(16, 2)), 2 * 4 * 5 + 16 * 5);
}

TEST(TCount, InvalidPartitions) {
  EXPECT_THROW(make_partition(16, {1, 1}), InvalidArgument);
  EXPECT_THROW(make_partition(16, {0, 4}), InvalidArgument);
  EXPECT_THROW(equal_partition(16, 3), InvalidArgument);
}

TEST(TCount, PaddingToPowerOfTwo) {
  const auto p = equal_partition(12, 2);
  EXPECT_EQ(p.M, 16);
  EXPECT_EQ(p.requested_M, 12);
  EXPECT_EQ(t_count(p), 96);
}

TEST(Savings, ClosedFormMatchesDifference) {
  for (int log_m = 1; log_m <= 20; ++log_m) {
    const std::int64_t M = std::int64_t{1} << log_m;
    for (int n = 1; n <= log_m; ++n) {
      if (log_m % n) continue;
      EXPECT_EQ(t_savings_equal(M, n), t_count(equal_partition(M, 1)) - t_count(equal_partition(M, n)));
      if (n == 1 || n == log_m) {
        EXPECT_EQ(t_savings_equal(M, n), 0);
      } else {
        EXPECT_GT(t_savings_equal(M, n), 0);
      }
    }
  }
  EXPECT_EQ(t_savings_equal(16, 2), 96);
  EXPECT_EQ(t_savings_equal(1024, 2), 31744);
}

TEST(Optimize, EqualSplitPrefersTwo) {
  for (int log_m = 4; log_m <= 12; ++log_m) {
    if (log_m % 2) continue;
    EXPECT_EQ(optimize_partition(std::int64_t{1} << log_m).partition.widths.size(), 2u) << log_m;
  }
  const auto c = optimize_partition(256);
  EXPECT_EQ(c.ancillae, 32);
  EXPECT_EQ(optimize_partition(4).partition.widths.size(), 1u);
}

TEST(Optimize, LinearGrowthConstant) {
  // sum_i M^{1/r_i} log2(M)/r_i <= K' M for groups no wider than half the controls.
  double worst = 0;
  for (int log_m = 2; log_m <= 20; ++log_m) {
    const double M = std::ldexp(1.0, log_m);
    for (int n = 2; n <= log_m; ++n) {
      if (log_m % n) continue;
      const int w = log_m / n;
      worst = std::max(worst, n * std::ldexp(1.0, w) * w / M);
    }
  }
  EXPECT_LE(worst, 1.0);
}

TEST(Select, PrintedFormulas) {
  const auto c = select_cost({4, 4});
  EXPECT_EQ(c.M, 2);
  EXPECT_DOUBLE_EQ(c.divided.t_gates, 4 * 8 + 4 * 8 + 2 * 0);
  EXPECT_DOUBLE_EQ(c.undivided.t_gates, 8 * 8);
  EXPECT_EQ(c.t_difference, 0);
  EXPECT_DOUBLE_EQ(c.divided.cnot, 4 * 9 + 4 * 9 + 2 * 1);
}

TEST(Select, SingleHamiltonianHasNoSelectorOverhead) {
  const auto c = select_cost({8});
  EXPECT_EQ(c.M, 1);
  EXPECT_DOUBLE_EQ(c.divided.t_gates, 8 * (4 * 4 - 4));
}

TEST(Select, FourPairs) {
  const auto c = select_cost({2, 2, 2, 2});
  EXPECT_DOUBLE_EQ(c.divided.t_gates, 4 * 2 * 4 + 4 * 4);
  EXPECT_DOUBLE_EQ(c.undivided.t_gates, 8 * 8);
  EXPECT_EQ(c.t_difference, -16);
}
