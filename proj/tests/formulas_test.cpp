#include "wecken/formulas.hpp"

#include <gtest/gtest.h>

#include "wecken/freegroup.hpp"

namespace wecken {
namespace {

TEST(CountWords, Examples) {
  EXPECT_EQ(count_words_exact(2, 1), 4);
  EXPECT_EQ(count_words_exact(2, 2), 12);
  EXPECT_EQ(count_words_exact(5, 0), 1);
  EXPECT_EQ(count_words_exact(1, 3), 2);
}

TEST(CountBall, Examples) {
  EXPECT_EQ(count_ball(2, 2), 17);
  EXPECT_EQ(count_ball(2, 5), 485);
  EXPECT_EQ(count_ball(3, 3), 187);
  EXPECT_EQ(count_ball(4, 0), 1);
  EXPECT_THROW(count_ball(1, 3), DomainError);
}

TEST(CountBall, EqualsShellSum) {
  for (int n = 2; n <= 10; ++n) {
    Integer acc = 0;
    for (int p = 0; p <= 30; ++p) {
      acc += count_words_exact(n, p);
      ASSERT_EQ(acc, count_ball(n, p)) << "n=" << n << " p=" << p;
    }
  }
}

TEST(CountBall, LargeValuesStayExact) {
  // 2 * 3^40 - 1 exceeds 64 bits.
  EXPECT_EQ(count_ball(2, 40).str(), "24315330918113857601");
}

TEST(CountBall, MatchesEnumerationForSmallBalls) {
  for (int n = 2; n <= 3; ++n)
    for (int p = 0; p <= 4; ++p)
      EXPECT_EQ(count_ball(n, p), Integer(enumerate_ball(BallSpec(Rank(n), p)).size()));
}

TEST(Shell, Examples) {
  EXPECT_EQ(count_shell(2, 1, 1), 4);
  EXPECT_EQ(prob_length_between(2, 1, 1), Rational(4, 5));
  EXPECT_EQ(count_shell(2, 1, 2), 16);
  EXPECT_EQ(prob_length_between(2, 1, 2), Rational(16, 17));
  for (int p = 1; p <= 8; ++p)
    EXPECT_EQ(prob_length_between(3, p, p), Rational(count_words_exact(3, p), count_ball(3, p)));
  EXPECT_THROW(count_shell(2, 3, 2), DomainError);
  EXPECT_THROW(count_shell(2, 0, 2), DomainError);
}

TEST(Shell, SubtractionMatchesProductForm) {
  for (int n = 2; n <= 7; ++n)
    for (int p = 1; p <= 15; ++p)
      for (int k = 1; k <= p; ++k) ASSERT_EQ(prob_length_between(n, k, p), prob_length_between_closed(n, k, p));
}

TEST(Lemma1, BoundExamples) {
  EXPECT_EQ(lemma1_bound(2, 1), Rational(1, 3));
  EXPECT_EQ(lemma1_bound(3, 2), Rational(7, 150));
  EXPECT_THROW(lemma1_bound(2, 0), DomainError);
}

TEST(Lemma1, CaseProbabilities) {
  const auto c = lemma1_case_probs(2, 1);
  EXPECT_EQ(c.inverse_own, Rational(1, 48));
  EXPECT_EQ(c.inverse_other, Rational(1, 48));
  EXPECT_EQ(c.positive, Rational(1, 72));
  EXPECT_EQ(c.weighted_total, Rational(1, 3));
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k <= 8; ++k) {
      const auto cs = lemma1_case_probs(n, k);
      EXPECT_EQ(cs.inverse_own, cs.inverse_other);
      EXPECT_EQ(cs.weighted_total, lemma1_bound(n, k));
    }
}

TEST(TailSum, FiniteGeometricIdentity) {
  for (int n = 2; n <= 10; ++n) {
    Rational partial = 0;
    for (int k = 1; k <= 12; ++k) {
      partial += lemma1_bound(n, k);
      ASSERT_EQ(partial + tail_bound_remainder(n, k), tail_bound_sum(n));
    }
  }
}

TEST(WeckenBound, Examples) {
  EXPECT_EQ(wecken_lower_bound(2), Rational(1, 2));
  EXPECT_EQ(wecken_lower_bound(7), Rational(149, 168));
  EXPECT_EQ(wecken_lower_bound(8), Rational(101, 112));
  EXPECT_EQ(wecken_lower_bound(10), Rational(1) - Rational(28, 360));
}

TEST(WeckenBound, StrictlyIncreasingTowardOne) {
  for (int n = 2; n < 300; ++n) {
    ASSERT_LT(wecken_lower_bound(n), wecken_lower_bound(n + 1));
    ASSERT_LT(wecken_lower_bound(n + 1), Rational(1));
  }
  EXPECT_GT(wecken_lower_bound(10'000), Rational(9998, 10'000));
}

TEST(Appendix, URatioExample) {
  EXPECT_EQ(u_ratio(2, 1, 1), Rational(17, 20));
}

TEST(Appendix, CaseProbabilityIncreasesWithP) {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 10; ++k)
      for (int p = k + 1; p <= 20; ++p) ASSERT_LE(appendix_case_prob(n, k, p), appendix_case_prob(n, k, p + 1));
  EXPECT_THROW(appendix_case_prob(2, 2, 2), DomainError);
}

TEST(Decimal, Rendering) {
  EXPECT_EQ(to_decimal(Rational(101, 112), 6), "0.901786");
  EXPECT_EQ(to_decimal(Rational(101, 112)), "0.901785714286");
  EXPECT_EQ(to_decimal(Rational(1, 2)), "0.5");
}

TEST(Binomial, Small) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(20, 2), 190);
  EXPECT_EQ(binomial(3, 5), 0);
}

}  // namespace
}  // namespace wecken
