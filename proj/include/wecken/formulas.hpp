#pragma once

// Exact counting formulas and density bounds in arbitrary-precision arithmetic.

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace wecken {

using Integer = boost::multiprecision::cpp_int;
/// Always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_rank_ge2(int n) {
  if (n < 2) throw DomainError("closed form requires n >= 2 (got n = " + std::to_string(n) + ")");
}

inline Integer ipow(Integer base, int e) { return boost::multiprecision::pow(base, static_cast<unsigned>(e)); }

}  // namespace detail

inline Rational make_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

/// W(k): reduced words of length exactly k; W(0) = 1.
inline Integer count_words_exact(int n, int k) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (k < 0) throw DomainError("k must be >= 0");
  if (k == 0) return 1;
  return Integer(2 * n) * detail::ipow(Integer(2 * n - 1), k - 1);
}

/// |G_p| = (n(2n-1)^p - 1)/(n-1), counting the empty word.
inline Integer count_ball(int n, int p) {
  detail::require_rank_ge2(n);
  if (p < 0) throw DomainError("p must be >= 0");
  const Integer num = Integer(n) * detail::ipow(Integer(2 * n - 1), p) - 1;
  return num / (n - 1);
}

/// S(k,p) = |G_p| - |G_{k-1}|: words with length in [k, p].
inline Integer count_shell(int n, int k, int p) {
  detail::require_rank_ge2(n);
  if (k < 1 || k > p) throw DomainError("count_shell requires 1 <= k <= p");
  return count_ball(n, p) - count_ball(n, k - 1);
}

/// U(k,p) = S(k,p)/|G_p|.
inline Rational prob_length_between(int n, int k, int p) {
  return make_rational(count_shell(n, k, p), count_ball(n, p));
}

/// Product closed form n(2n-1)^{k-1}((2n-1)^{p-k+1}-1)/(n(2n-1)^p-1), for cross-checks.
inline Rational prob_length_between_closed(int n, int k, int p) {
  detail::require_rank_ge2(n);
  if (k < 1 || k > p) throw DomainError("prob_length_between requires 1 <= k <= p");
  const Integer q = 2 * n - 1;
  const Integer num = Integer(n) * detail::ipow(q, k - 1) * (detail::ipow(q, p - k + 1) - 1);
  const Integer den = Integer(n) * detail::ipow(q, p) - 1;
  return make_rational(num, den);
}

inline Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Upper bound (3n-2)/(2n(2n-1)^k) on the density of A_{k,n}, k >= 1.
inline Rational lemma1_bound(int n, int k) {
  detail::require_rank_ge2(n);
  if (k < 1) throw DomainError("the A_k bound is stated for k >= 1");
  return make_rational(Integer(3 * n - 2), Integer(2 * n) * detail::ipow(Integer(2 * n - 1), k));
}

/// Probabilities of the three ways two tails of length k coincide for a fixed
/// pair of slots, and the total after the C(2n,2) choice of slot pair.
struct Lemma1Cases {
  Rational inverse_own;    // phi(a_1) = v a_1^-1 u, phi(a_2) = v a_1^-1 a_2 w
  Rational inverse_other;  // phi(a_1) = v a_2^-1 a_1 u, phi(a_2) = v a_2^-1 w
  Rational positive;       // phi(a_1) = v a_1 u, phi(a_2) = v a_2 w
  Rational weighted_total;
};

inline Lemma1Cases lemma1_case_probs(int n, int k) {
  detail::require_rank_ge2(n);
  if (k < 1) throw DomainError("the A_k case analysis is stated for k >= 1");
  const Integer wk = count_words_exact(n, k);
  const Integer wk1 = count_words_exact(n, k + 1);
  Lemma1Cases c;
  c.inverse_own = make_rational(1, Integer(2 * n) * wk1);
  c.inverse_other = make_rational(1, Integer(2 * n) * (2 * n - 1) * wk);
  c.positive = make_rational(Integer(n - 1), Integer(n) * (2 * n - 1) * wk1);
  c.weighted_total = Rational(binomial(2 * n, 2)) * (c.inverse_own + c.inverse_other + c.positive);
  return c;
}

/// Sum over k >= 1 of lemma1_bound(n, k): (3n-2)/(2n(2n-2)).
inline Rational tail_bound_sum(int n) {
  detail::require_rank_ge2(n);
  return make_rational(Integer(3 * n - 2), Integer(2 * n) * (2 * n - 2));
}

/// Remainder of the geometric series after K terms: (3n-2)/(2n(2n-2)(2n-1)^K).
inline Rational tail_bound_remainder(int n, int terms) {
  detail::require_rank_ge2(n);
  return make_rational(Integer(3 * n - 2),
                       Integer(2 * n) * (2 * n - 2) * detail::ipow(Integer(2 * n - 1), terms));
}

/// Lower bound 1 - (3n-2)/(2n(2n-2)) on the density of Wecken endomorphisms.
inline Rational wecken_lower_bound(int n) { return Rational(1) - tail_bound_sum(n); }

/// a_p = U(k,p)/(2n) * U(k+1,p)/W(k+1); requires k+1 <= p.
inline Rational appendix_case_prob(int n, int k, int p) {
  detail::require_rank_ge2(n);
  if (k < 1 || k + 1 > p) throw DomainError("appendix_case_prob requires 1 <= k and k+1 <= p");
  return prob_length_between(n, k, p) / Rational(2 * n) * prob_length_between(n, k + 1, p) /
         Rational(count_words_exact(n, k + 1));
}

/// U(k,p)/U(k,p+1); at most 1 for 1 <= k <= p.
inline Rational u_ratio(int n, int k, int p) {
  return prob_length_between(n, k, p) / prob_length_between(n, k, p + 1);
}

struct BoundReport {
  int n = 2;
  std::vector<Rational> per_k;  // per_k[k-1] = lemma1_bound(n, k)
  Rational tail_sum;
  Rational wecken_lower;
};

inline BoundReport bound_report(int n, int k_max) {
  BoundReport r;
  r.n = n;
  for (int k = 1; k <= k_max; ++k) r.per_k.push_back(lemma1_bound(n, k));
  r.tail_sum = tail_bound_sum(n);
  r.wecken_lower = wecken_lower_bound(n);
  return r;
}

/// Decimal rendering with `digits` significant digits.
inline std::string to_decimal(const Rational& q, int digits = 12) {
  using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  const Float v = Float(boost::multiprecision::numerator(q)) / Float(boost::multiprecision::denominator(q));
  return v.str(digits, std::ios_base::fmtflags{});
}

}  // namespace wecken
