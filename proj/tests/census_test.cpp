#include "wecken/census.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"

namespace wecken {
namespace {

// Per-p tallies over (G_p)^2 for n = 2, produced by the brute-force oracle
// (oracle::tails / oracle::has_remnant over oracle::ball) and frozen here.
struct Golden {
  int p;
  std::uint64_t total, vprime, remnant, v, a0, b, a1, a2;
};
constexpr Golden kRank2[] = {
    {1, 25, 16, 8, 5, 3, 3, 0, 0},
    {2, 289, 121, 144, 56, 88, 64, 24, 0},
    {3, 2809, 832, 1880, 541, 1199, 927, 372, 40},
    {4, 25921, 6313, 21184, 5188, 14104, 10000, 5236, 1024},
};

TEST(ExactCensus, MatchesFrozenOracleCounts) {
  for (const Golden& g : kRank2) {
    const CensusResult r = exact_census(2, g.p);
    EXPECT_EQ(r.total, g.total);
    EXPECT_EQ(r.counts.classified, g.total);
    EXPECT_EQ(r.counts.vprime, g.vprime);
    EXPECT_EQ(r.counts.remnant, g.remnant);
    EXPECT_EQ(r.counts.v, g.v);
    EXPECT_EQ(r.counts.a0, g.a0);
    EXPECT_EQ(r.counts.b, g.b);
    EXPECT_EQ(r.counts.ak_count(1), g.a1);
    EXPECT_EQ(r.counts.ak_count(2), g.a2);
    EXPECT_EQ(r.xp, Rational(Integer(g.vprime), Integer(g.total)));
  }
}

TEST(ExactCensus, SmallestCase) {
  const CensusResult r = exact_census(2, 1);
  EXPECT_EQ(r.total, 25);
  EXPECT_EQ(r.counts.vprime, 16u);
  EXPECT_EQ(r.xp, Rational(16, 25));
}

TEST(ExactCensus, RankOneUsesEnumeration) {
  const CensusResult r = exact_census(1, 3);
  EXPECT_EQ(r.total, 7);
}

TEST(ExactCensus, Invariants) {
  for (int p = 1; p <= 3; ++p) {
    const CensusResult r = exact_census(3, p);
    const auto& c = r.counts;
    EXPECT_LE(c.v, c.vprime);
    EXPECT_LE(c.b, c.a0);
    EXPECT_LE(c.a0, c.remnant);
    EXPECT_EQ(c.wecken_certified, c.v + c.b);
    EXPECT_EQ(c.v + c.b + c.undetermined, c.remnant);
  }
}

TEST(ExactCensus, ShardingDoesNotChangeCounts) {
  const CensusResult one = exact_census(2, 3, kDefaultBudget, 1);
  for (unsigned shards : {2u, 3u, 7u, 64u}) {
    const CensusResult many = exact_census(2, 3, kDefaultBudget, shards);
    EXPECT_EQ(one.counts, many.counts) << shards;
  }
}

TEST(ExactCensus, BudgetExceededDoesNoWork) {
  try {
    exact_census(3, 4);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), Integer(937) * 937 * 937);
    EXPECT_EQ(e.budget(), kDefaultBudget);
  }
  EXPECT_THROW(exact_census(2, 3, 100), BudgetExceeded);
}

TEST(XpSequence, NonincreasingAndFrozen) {
  const XpSequence s = xp_sequence(2, 4);
  ASSERT_EQ(s.values.size(), 4u);
  EXPECT_FALSE(s.stopped_at);
  EXPECT_EQ(s.values[0], Rational(16, 25));
  EXPECT_EQ(s.values[1], Rational(121, 289));
  EXPECT_EQ(s.values[2], Rational(832, 2809));
  EXPECT_EQ(s.values[3], Rational(6313, 25921));
  for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_LE(s.values[i], s.values[i - 1]);
  EXPECT_EQ(xp_sequence(2, 1).values.size(), 1u);
}

TEST(XpSequence, NonincreasingForRankThree) {
  const XpSequence s = xp_sequence(3, 3);
  ASSERT_EQ(s.values.size(), 3u);
  for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_LE(s.values[i], s.values[i - 1]);
}

TEST(XpSequence, StopsAtBudget) {
  const XpSequence s = xp_sequence(2, 5, 30'000);
  EXPECT_EQ(s.values.size(), 4u);
  ASSERT_TRUE(s.stopped_at);
  EXPECT_EQ(*s.stopped_at, 5);
  EXPECT_EQ(*s.required, 235225);
}

TEST(Wilson, ContainsEstimateAndStaysInUnitInterval) {
  for (std::uint64_t n : {1ull, 10ull, 1000ull})
    for (std::uint64_t h = 0; h <= n; h += std::max<std::uint64_t>(1, n / 7)) {
      const Interval ci = wilson_interval(h, n);
      const double f = double(h) / double(n);
      EXPECT_LE(0.0, ci.low);
      EXPECT_LE(ci.low, f);
      EXPECT_LE(f, ci.high);
      EXPECT_LE(ci.high, 1.0);
    }
  // Textbook value: 50/100 gives [0.4038, 0.5962].
  const Interval ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.low, 0.40383, 1e-4);
  EXPECT_NEAR(ci.high, 0.59617, 1e-4);
}

TEST(MonteCarlo, DeterministicForSeedAndShards) {
  const McResult a = mc_census(2, 6, 5000, 77, 3);
  const McResult b = mc_census(2, 6, 5000, 77, 3);
  EXPECT_EQ(a.counts, b.counts);
  const McResult c = mc_census(2, 6, 5000, 78, 3);
  EXPECT_NE(a.counts, c.counts);
}

TEST(MonteCarlo, AgreesWithExactCensus) {
  const CensusResult exact = exact_census(2, 3);
  const McResult mc = mc_census(2, 3, 40'000, 5, 2);
  auto check = [&](const std::string& cat, std::uint64_t count) {
    const double q = static_cast<double>(count) / static_cast<double>(exact.counts.classified);
    const double sigma = std::sqrt(q * (1 - q) / 40'000.0);
    EXPECT_NEAR(mc.estimate(cat).fraction, q, 3 * sigma) << cat;
  };
  check("vprime", exact.counts.vprime);
  check("a0", exact.counts.a0);
  check("remnant", exact.counts.remnant);
  check("b", exact.counts.b);
}

TEST(MonteCarlo, EstimatesAreConsistent) {
  const McResult r = mc_census(3, 10, 5000, 1, 2);
  for (const auto& e : r.estimates) {
    EXPECT_LE(0.0, e.ci_low);
    EXPECT_LE(e.ci_low, e.fraction);
    EXPECT_LE(e.fraction, e.ci_high);
    EXPECT_LE(e.ci_high, 1.0);
    EXPECT_EQ(e.samples, 5000u);
    EXPECT_EQ(e.rng_id, "mt19937_64");
  }
  EXPECT_LE(r.estimate("v").fraction, r.estimate("vprime").fraction);
  EXPECT_EQ(r.counts.wecken_certified, r.counts.v + r.counts.b);
}

TEST(ShardSeed, DistinctPerShard) {
  EXPECT_NE(shard_seed(1, 0), shard_seed(1, 1));
  EXPECT_NE(shard_seed(1, 0), shard_seed(2, 0));
  EXPECT_EQ(shard_seed(9, 4), shard_seed(9, 4));
}

TEST(Trend, DefaultRuleAndRows) {
  EXPECT_EQ(default_p_rule(5), 50);
  EXPECT_EQ(default_p_rule(20), 80);
  const auto rows = density_trend({2, 3}, [](int) { return 8; }, 2000, 3, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].p, 8);
  EXPECT_EQ(rows[1].wecken_lower, wecken_lower_bound(3));
}

}  // namespace
}  // namespace wecken
