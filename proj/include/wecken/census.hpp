#pragma once

// Exhaustive censuses over (G_p)^n and seeded Monte Carlo density estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wecken/classify.hpp"
#include "wecken/formulas.hpp"
#include "wecken/freegroup.hpp"
#include "wecken/wagner.hpp"

namespace wecken {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Raised before any work when a census would exceed its classification budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(Integer required, std::uint64_t budget)
      : std::runtime_error("census needs " + required.str() + " classifications, budget is " +
                           std::to_string(budget)),
        required_(std::move(required)),
        budget_(budget) {}
  const Integer& required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  Integer required_;
  std::uint64_t budget_;
};

/// Category tallies; merging is plain addition so shard order never matters.
struct CensusCounts {
  std::uint64_t classified = 0;
  std::uint64_t remnant = 0;
  std::uint64_t vprime = 0;
  std::uint64_t v = 0;
  std::uint64_t a0 = 0;
  std::uint64_t b = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t wecken_certified = 0;
  std::map<std::size_t, std::uint64_t> ak;  // k >= 1

  void add(const Classification& c) {
    ++classified;
    remnant += c.has_remnant;
    vprime += c.in_vprime;
    v += c.in_v;
    a0 += c.in_a0;
    b += c.in_b;
    undetermined += c.wecken == WeckenStatus::undetermined;
    wecken_certified += c.certified();
    for (std::size_t k : c.ak) ++ak[k];
  }

  CensusCounts& operator+=(const CensusCounts& o) {
    classified += o.classified;
    remnant += o.remnant;
    vprime += o.vprime;
    v += o.v;
    a0 += o.a0;
    b += o.b;
    undetermined += o.undetermined;
    wecken_certified += o.wecken_certified;
    for (const auto& [k, c] : o.ak) ak[k] += c;
    return *this;
  }

  std::uint64_t ak_count(std::size_t k) const {
    if (k == 0) return a0;
    auto it = ak.find(k);
    return it == ak.end() ? 0 : it->second;
  }

  friend bool operator==(const CensusCounts&, const CensusCounts&) = default;
};

struct CensusResult {
  int n = 0;
  int p = 0;
  Integer total;  // |G_p|^n
  CensusCounts counts;
  Rational xp;  // |V'_n cap G_p^n| / |G_p^n|

  Rational fraction(std::uint64_t count) const { return Rational(Integer(count), total); }
};

namespace detail {

/// Runs body(shard) for shard in [0, shards), on threads when shards > 1.
inline void run_sharded(unsigned shards, const std::function<void(unsigned)>& body) {
  if (shards <= 1) {
    body(0);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(shards);
  for (unsigned s = 0; s < shards; ++s) workers.emplace_back(body, s);
}

inline std::uint64_t block_begin(std::uint64_t total, unsigned shards, unsigned s) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(total) * s) / shards);
}

inline Integer ball_size(int n, int p) { return n == 1 ? Integer(2 * p + 1) : count_ball(n, p); }

}  // namespace detail

inline unsigned default_shards() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

/// Tuple-space size |G_p|^n for a census.
inline Integer census_size(int n, int p) {
  return boost::multiprecision::pow(detail::ball_size(n, p), static_cast<unsigned>(n));
}

/// Classifies every n-tuple of G_p words. Tuples are visited as an odometer over
/// canonical word order with the last coordinate fastest; shards take contiguous blocks.
inline CensusResult exact_census(int n, int p, std::uint64_t budget = kDefaultBudget, unsigned shards = 1) {
  const Rank rank(n);
  if (p < 0) throw std::invalid_argument("max_len must be >= 0");
  const Integer total = census_size(n, p);
  if (total > budget) throw BudgetExceeded(total, budget);

  const std::vector<Word> ball = enumerate_ball(BallSpec(rank, p));
  const std::uint64_t ball_n = ball.size();
  const std::uint64_t tuples = static_cast<std::uint64_t>(total);
  shards = std::max(1u, shards);

  std::vector<CensusCounts> partial(shards);
  detail::run_sharded(shards, [&](unsigned s) {
    const std::uint64_t lo = detail::block_begin(tuples, shards, s);
    const std::uint64_t hi = detail::block_begin(tuples, shards, s + 1);
    if (lo >= hi) return;
    std::vector<std::uint64_t> digit(static_cast<std::size_t>(n));
    std::uint64_t rest = lo;
    for (int i = n - 1; i >= 0; --i) {
      digit[static_cast<std::size_t>(i)] = rest % ball_n;
      rest /= ball_n;
    }
    std::vector<Word> images(static_cast<std::size_t>(n));
    CensusCounts& acc = partial[s];
    for (std::uint64_t t = lo; t < hi; ++t) {
      for (std::size_t i = 0; i < images.size(); ++i) images[i] = ball[digit[i]];
      acc.add(classify(Endomorphism(rank, images)));
      for (std::size_t i = digit.size(); i-- > 0;) {
        if (++digit[i] < ball_n) break;
        digit[i] = 0;
      }
    }
  });

  CensusResult r;
  r.n = n;
  r.p = p;
  r.total = total;
  for (const CensusCounts& c : partial) r.counts += c;
  r.xp = r.fraction(r.counts.vprime);
  return r;
}

struct XpSequence {
  std::vector<Rational> values;  // values[p-1] = x_p
  /// First p whose census exceeded the budget, when the sequence stopped early.
  std::optional<int> stopped_at;
  std::optional<Integer> required;
};

/// Exact x_1, ..., x_{p_max}; stops at the first p over budget and keeps the prefix.
inline XpSequence xp_sequence(int n, int p_max, std::uint64_t budget = kDefaultBudget, unsigned shards = 1) {
  XpSequence out;
  for (int p = 1; p <= p_max; ++p) {
    try {
      out.values.push_back(exact_census(n, p, budget, shards).xp);
    } catch (const BudgetExceeded& e) {
      out.stopped_at = p;
      out.required = e.required();
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

inline constexpr const char* kRngId = "mt19937_64";

/// Shard sub-seed: splitmix64 finalizer applied to seed + (shard + 1) * golden gamma.
inline std::uint64_t shard_seed(std::uint64_t seed, unsigned shard) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(shard) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Interval {
  double low = 0;
  double high = 1;
};

/// 95% Wilson score interval for `hits` successes out of `trials`.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(trials);
  const double ph = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::clamp(std::min(center - half, ph), 0.0, 1.0), std::clamp(std::max(center + half, ph), 0.0, 1.0)};
}

struct DensityEstimate {
  std::string category;
  std::uint64_t hits = 0;
  double fraction = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string rng_id = kRngId;

  /// Binomial standard error at the estimated fraction.
  double sigma() const { return std::sqrt(fraction * (1 - fraction) / static_cast<double>(samples)); }
};

struct McResult {
  int n = 0;
  int p = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned shards = 1;
  CensusCounts counts;
  std::vector<DensityEstimate> estimates;

  const DensityEstimate& estimate(const std::string& category) const {
    for (const auto& e : estimates)
      if (e.category == category) return e;
    throw std::out_of_range("no estimate for category " + category);
  }
};

inline std::vector<DensityEstimate> density_estimates(const CensusCounts& c, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::uint64_t>> cats = {
      {"remnant", c.remnant}, {"vprime", c.vprime}, {"v", c.v}, {"a0", c.a0}, {"b", c.b}};
  for (const auto& [k, cnt] : c.ak) cats.emplace_back("a" + std::to_string(k), cnt);
  cats.emplace_back("wecken_certified", c.wecken_certified);
  cats.emplace_back("undetermined", c.undetermined);

  std::vector<DensityEstimate> out;
  for (auto& [name, hits] : cats) {
    DensityEstimate e;
    e.category = name;
    e.hits = hits;
    e.samples = c.classified;
    e.seed = seed;
    e.fraction = c.classified ? static_cast<double>(hits) / static_cast<double>(c.classified) : 0.0;
    const Interval ci = wilson_interval(hits, c.classified);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    out.push_back(std::move(e));
  }
  return out;
}

/// Classifies `samples` endomorphisms whose images are independent uniform draws from G_p.
/// Shard s draws samples [s*N/S, (s+1)*N/S) from its own generator seeded by shard_seed.
inline McResult mc_census(int n, int p, std::uint64_t samples, std::uint64_t seed, unsigned shards = 1) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const Rank rank(n);
  const BallSampler sampler(BallSpec(rank, p));
  shards = std::max(1u, shards);

  std::vector<CensusCounts> partial(shards);
  detail::run_sharded(shards, [&](unsigned s) {
    const std::uint64_t lo = detail::block_begin(samples, shards, s);
    const std::uint64_t hi = detail::block_begin(samples, shards, s + 1);
    std::mt19937_64 rng(shard_seed(seed, s));
    std::vector<Word> images(static_cast<std::size_t>(n));
    for (std::uint64_t t = lo; t < hi; ++t) {
      for (auto& w : images) w = sampler(rng);
      partial[s].add(classify(Endomorphism(rank, images)));
    }
  });

  McResult r;
  r.n = n;
  r.p = p;
  r.samples = samples;
  r.seed = seed;
  r.shards = shards;
  for (const auto& c : partial) r.counts += c;
  r.estimates = density_estimates(r.counts, seed);
  return r;
}

// ---------------------------------------------------------------------------
// Trends against the limiting constants

inline const double kInvE = std::exp(-1.0);

inline int default_p_rule(int n) { return std::max(50, 4 * n); }

struct TrendRow {
  int n = 0;
  int p = 0;
  McResult mc;
  Rational wecken_lower;
};

/// Monte Carlo estimates per rank. Reports only; the limit claims are not asserted here.
inline std::vector<TrendRow> density_trend(const std::vector<int>& ranks, const std::function<int(int)>& p_rule,
                                           std::uint64_t samples, std::uint64_t seed, unsigned shards = 1) {
  std::vector<TrendRow> rows;
  for (int n : ranks) {
    TrendRow row;
    row.n = n;
    row.p = p_rule ? p_rule(n) : default_p_rule(n);
    row.mc = mc_census(n, row.p, samples, seed, shards);
    row.wecken_lower = n >= 2 ? wecken_lower_bound(n) : Rational(0);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wecken
