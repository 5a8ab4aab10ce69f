#pragma once

// Report rendering and command runners shared by the CLI and the test suites.
//
// Every runner writes its full output to a stream and throws on failure, so the
// CLI front end only has to map exceptions onto exit codes.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wecken/census.hpp"
#include "wecken/classify.hpp"
#include "wecken/formulas.hpp"
#include "wecken/freegroup.hpp"
#include "wecken/wagner.hpp"

namespace wecken {

using OrderedJson = nlohmann::ordered_json;

/// Invalid command-line configuration (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  int rank = 2;
  int max_p = 1;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned shards = default_shards();
  std::uint64_t budget = kDefaultBudget;
  OutputFormat format = OutputFormat::csv;
  int precision = 12;
  bool alpha = false;
  bool no_header = false;

  void validate() const {
    if (rank < 1) throw ConfigError("--rank must be >= 1");
    if (max_p < 0) throw ConfigError("--max-p must be >= 0");
    if (samples < 1) throw ConfigError("--samples must be >= 1");
    if (shards < 1) throw ConfigError("--shards must be >= 1");
    if (precision < 1 || precision > 60) throw ConfigError("--precision must be in 1..60");
    if (alpha && rank > 26) throw ConfigError("--alpha requires rank <= 26");
  }
  WordStyle word_style() const { return alpha ? WordStyle::alpha : WordStyle::signed_int; }
};

/// Default budget, overridable by the WECKEN_BUDGET environment variable.
inline std::uint64_t budget_from_env(std::uint64_t fallback = kDefaultBudget) {
  const char* v = std::getenv("WECKEN_BUDGET");
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long b = std::stoull(v, &used);
    if (used != std::string(v).size() || b == 0) throw ConfigError("");
    return b;
  } catch (...) {
    throw ConfigError(std::string("WECKEN_BUDGET must be a positive integer, got '") + v + "'");
  }
}

// ---------------------------------------------------------------------------
// Input

/// Parses image words; `cancelled`, when given, reports whether any input needed reduction.
inline Endomorphism parse_endomorphism(int rank, const std::vector<std::string>& images,
                                       WordStyle style = WordStyle::signed_int, bool* cancelled = nullptr) {
  const Rank r(rank);
  std::vector<Word> words;
  words.reserve(images.size());
  for (const auto& s : images) {
    ParsedWord pw = parse_word(s, r, style);
    if (cancelled) *cancelled = *cancelled || pw.cancelled;
    words.push_back(std::move(pw.word));
  }
  return Endomorphism(r, std::move(words));
}

/// {"rank": n, "images": ["1 2", ...]} in signed-integer word format.
inline Endomorphism parse_endomorphism_json(const std::string& text) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid endomorphism JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rank") || !j.contains("images") || !j["rank"].is_number_integer() ||
      !j["images"].is_array())
    throw ParseError(R"(endomorphism JSON must look like {"rank": n, "images": [...]})");
  std::vector<std::string> images;
  for (const auto& w : j["images"]) {
    if (!w.is_string()) throw ParseError("endomorphism images must be strings");
    images.push_back(w.get<std::string>());
  }
  return parse_endomorphism(j["rank"].get<int>(), images);
}

inline OrderedJson endomorphism_json(const Endomorphism& phi) {
  OrderedJson j;
  j["rank"] = phi.rank().value();
  j["images"] = OrderedJson::array();
  for (const Word& w : phi.images()) j["images"].push_back(format_word(w));
  return j;
}

// ---------------------------------------------------------------------------
// Formatting helpers

inline std::string format_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_header_line(std::ostream& os, const RunConfig& cfg) {
  if (cfg.no_header) return;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  os << "# wecken " << cfg.command << " generated " << buf << '\n';
}

inline std::string tail_side_name(TailSide s) { return s == TailSide::w ? "w" : "w_bar"; }

// ---------------------------------------------------------------------------
// Per-map reports

inline OrderedJson classification_json(const Classification& c, const NielsenBound& nb) {
  OrderedJson j;
  j["remnant"] = c.has_remnant;
  j["equality_lengths"] = c.equality_lengths;
  j["V"] = c.in_v;
  j["Vprime"] = c.in_vprime;
  j["A0"] = c.in_a0;
  j["Ak"] = c.ak;
  j["B"] = c.in_b;
  j["wecken"] = std::string(to_string(c.wecken));
  j["nielsen_lower_bound"] = nb.value;
  return j;
}

inline OrderedJson tails_json(const Endomorphism& phi, WordStyle style) {
  const auto tails = wagner_tails(phi);
  OrderedJson j = endomorphism_json(phi);
  j["tails"] = OrderedJson::array();
  for (const TailPair& t : tails) {
    OrderedJson tj;
    tj["slot"] = t.slot;
    tj["location"] = t.location;
    tj["position"] = t.position;
    tj["sign"] = t.sign;
    tj["w"] = format_word(t.w, style);
    tj["w_bar"] = format_word(t.w_bar, style);
    j["tails"].push_back(tj);
  }
  j["equalities"] = OrderedJson::array();
  for (const TailEquality& e : tail_equalities(tails)) {
    OrderedJson ej;
    ej["first"] = {{"slot", e.first.slot}, {"side", tail_side_name(e.first.side)}};
    ej["second"] = {{"slot", e.second.slot}, {"side", tail_side_name(e.second.side)}};
    ej["length"] = e.length;
    ej["same_slot"] = e.same_slot();
    j["equalities"].push_back(ej);
  }
  return j;
}

inline void run_tails(const Endomorphism& phi, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == OutputFormat::json) {
    os << tails_json(phi, cfg.word_style()).dump(2) << '\n';
    return;
  }
  const auto tails = wagner_tails(phi);
  write_header_line(os, cfg);
  os << "slot,location,position,sign,w,w_bar\n";
  for (const TailPair& t : tails)
    os << t.slot << ',' << t.location << ',' << t.position << ',' << t.sign << ','
       << csv_quote(format_word(t.w, cfg.word_style())) << ',' << csv_quote(format_word(t.w_bar, cfg.word_style()))
       << '\n';
  os << '\n' << "first_slot,first_side,second_slot,second_side,length\n";
  for (const TailEquality& e : tail_equalities(tails))
    os << e.first.slot << ',' << tail_side_name(e.first.side) << ',' << e.second.slot << ','
       << tail_side_name(e.second.side) << ',' << e.length << '\n';
}

inline void run_classify(const Endomorphism& phi, const RunConfig& cfg, std::ostream& os) {
  const Classification c = classify(phi);
  const NielsenBound nb = nielsen_lower_bound(phi);
  const OrderedJson j = classification_json(c, nb);
  if (cfg.format == OutputFormat::json) {
    os << j.dump() << '\n';
    return;
  }
  write_header_line(os, cfg);
  os << "remnant,equality_lengths,V,Vprime,A0,Ak,B,wecken,nielsen_lower_bound\n";
  os << c.has_remnant << ',' << csv_quote(j["equality_lengths"].dump()) << ',' << c.in_v << ',' << c.in_vprime
     << ',' << c.in_a0 << ',' << csv_quote(j["Ak"].dump()) << ',' << c.in_b << ',' << to_string(c.wecken) << ','
     << nb.value << '\n';
}

// ---------------------------------------------------------------------------
// Censuses

inline OrderedJson ak_json(const CensusCounts& c) {
  OrderedJson j = OrderedJson::object();
  for (const auto& [k, cnt] : c.ak) j[std::to_string(k)] = cnt;
  return j;
}

inline void run_census(const RunConfig& cfg, std::ostream& os) {
  const CensusResult r = exact_census(cfg.rank, cfg.max_p, cfg.budget, cfg.shards);
  const auto& c = r.counts;
  const std::string num = boost::multiprecision::numerator(r.xp).str();
  const std::string den = boost::multiprecision::denominator(r.xp).str();
  if (cfg.format == OutputFormat::json) {
    OrderedJson j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["total"] = r.total.str();
    j["remnant"] = c.remnant;
    j["vprime"] = c.vprime;
    j["v"] = c.v;
    j["a0"] = c.a0;
    j["b"] = c.b;
    j["ak_json"] = ak_json(c);
    j["wecken_certified"] = c.wecken_certified;
    j["xp_num"] = num;
    j["xp_den"] = den;
    os << j.dump() << '\n';
    return;
  }
  write_header_line(os, cfg);
  os << "n,p,total,remnant,vprime,v,a0,b,ak_json,wecken_certified,xp_num,xp_den\n";
  os << r.n << ',' << r.p << ',' << r.total.str() << ',' << c.remnant << ',' << c.vprime << ',' << c.v << ','
     << c.a0 << ',' << c.b << ',' << csv_quote(ak_json(c).dump()) << ',' << c.wecken_certified << ',' << num << ','
     << den << '\n';
}

/// Writes the available prefix, then rethrows BudgetExceeded if the sequence stopped early.
inline void run_xp(const RunConfig& cfg, std::ostream& os) {
  const XpSequence seq = xp_sequence(cfg.rank, cfg.max_p, cfg.budget, cfg.shards);
  if (cfg.format == OutputFormat::json) {
    OrderedJson arr = OrderedJson::array();
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
      OrderedJson row;
      row["n"] = cfg.rank;
      row["p"] = i + 1;
      row["xp_num"] = boost::multiprecision::numerator(seq.values[i]).str();
      row["xp_den"] = boost::multiprecision::denominator(seq.values[i]).str();
      row["xp_decimal"] = to_decimal(seq.values[i], cfg.precision);
      arr.push_back(row);
    }
    os << arr.dump() << '\n';
  } else {
    write_header_line(os, cfg);
    os << "n,p,xp_num,xp_den,xp_decimal\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i)
      os << cfg.rank << ',' << i + 1 << ',' << boost::multiprecision::numerator(seq.values[i]).str() << ','
         << boost::multiprecision::denominator(seq.values[i]).str() << ','
         << to_decimal(seq.values[i], cfg.precision) << '\n';
  }
  if (seq.stopped_at) throw BudgetExceeded(*seq.required, cfg.budget);
}

inline void write_estimates_csv(std::ostream& os, const McResult& r, int precision) {
  for (const DensityEstimate& e : r.estimates)
    os << r.n << ',' << r.p << ',' << r.samples << ',' << r.seed << ',' << r.shards << ',' << e.category << ','
       << format_double(e.fraction, precision) << ',' << format_double(e.ci_low, precision) << ','
       << format_double(e.ci_high, precision) << '\n';
}

inline OrderedJson estimate_json(const McResult& r, const DensityEstimate& e) {
  OrderedJson j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["shards"] = r.shards;
  j["category"] = e.category;
  j["fraction"] = e.fraction;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  return j;
}

inline void run_mc(const RunConfig& cfg, std::ostream& os) {
  const McResult r = mc_census(cfg.rank, cfg.max_p, cfg.samples, cfg.seed, cfg.shards);
  if (cfg.format == OutputFormat::json) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& e : r.estimates) arr.push_back(estimate_json(r, e));
    os << arr.dump() << '\n';
    return;
  }
  write_header_line(os, cfg);
  os << "n,p,samples,seed,shards,category,fraction,ci_low,ci_high\n";
  write_estimates_csv(os, r, cfg.precision);
}

// ---------------------------------------------------------------------------
// Bounds

struct RankRange {
  int lo = 2;
  int hi = 2;
};

/// "a..b" or a single integer.
inline RankRange parse_rank_range(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw ConfigError("");
      return v;
    } catch (...) {
      throw ConfigError("invalid rank range '" + s + "'");
    }
  };
  RankRange r;
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(s);
  } else {
    r.lo = to_int(s.substr(0, dots));
    r.hi = to_int(s.substr(dots + 2));
  }
  if (r.lo < 2 || r.hi < r.lo) throw ConfigError("rank range must satisfy 2 <= lo <= hi, got '" + s + "'");
  return r;
}

/// Thresholds in {0.9, 0.99} that the Wecken lower bound first exceeds at n.
inline std::string thresholds_first_exceeded(int n) {
  std::string out;
  for (const auto& [label, t] : {std::pair<const char*, Rational>{"0.9", Rational(9, 10)},
                                 std::pair<const char*, Rational>{"0.99", Rational(99, 100)}}) {
    const bool now = wecken_lower_bound(n) > t;
    const bool before = n > 2 && wecken_lower_bound(n - 1) > t;
    if (now && !before) out += out.empty() ? label : std::string(";") + label;
  }
  return out;
}

/// Wecken lower bound per n; with k_max > 0, the per-k A_k bound table instead.
inline void run_bounds(RankRange range, int k_max, const RunConfig& cfg, std::ostream& os) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (cfg.format == OutputFormat::json) {
    OrderedJson arr = OrderedJson::array();
    for (int n = range.lo; n <= range.hi; ++n) {
      if (k_max > 0) {
        for (int k = 1; k <= k_max; ++k) {
          const Rational b = lemma1_bound(n, k);
          arr.push_back(OrderedJson{{"n", n},
                                    {"k", k},
                                    {"bound_num", numerator(b).str()},
                                    {"bound_den", denominator(b).str()},
                                    {"bound_decimal", to_decimal(b, cfg.precision)}});
        }
      } else {
        const Rational b = wecken_lower_bound(n);
        arr.push_back(OrderedJson{{"n", n},
                                  {"lower_bound_num", numerator(b).str()},
                                  {"lower_bound_den", denominator(b).str()},
                                  {"decimal", to_decimal(b, cfg.precision)},
                                  {"first_exceeds", thresholds_first_exceeded(n)}});
      }
    }
    os << arr.dump() << '\n';
    return;
  }
  write_header_line(os, cfg);
  if (k_max > 0) {
    os << "n,k,bound_num,bound_den,bound_decimal\n";
    for (int n = range.lo; n <= range.hi; ++n)
      for (int k = 1; k <= k_max; ++k) {
        const Rational b = lemma1_bound(n, k);
        os << n << ',' << k << ',' << numerator(b).str() << ',' << denominator(b).str() << ','
           << to_decimal(b, cfg.precision) << '\n';
      }
    return;
  }
  os << "n,lower_bound_num,lower_bound_den,decimal,first_exceeds\n";
  for (int n = range.lo; n <= range.hi; ++n) {
    const Rational b = wecken_lower_bound(n);
    os << n << ',' << numerator(b).str() << ',' << denominator(b).str() << ',' << to_decimal(b, cfg.precision)
       << ',' << thresholds_first_exceeded(n) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Trend

inline void run_trend(const std::vector<int>& ranks, std::optional<int> fixed_p, const RunConfig& cfg,
                      std::ostream& os) {
  const std::function<int(int)> rule = fixed_p ? std::function<int(int)>([p = *fixed_p](int) { return p; })
                                                : std::function<int(int)>(default_p_rule);
  const auto rows = density_trend(ranks, rule, cfg.samples, cfg.seed, cfg.shards);
  const double one_over_e = kInvE, two_over_e = 2 * kInvE, one_minus = 1 - kInvE;
  const int prec = cfg.precision;
  if (cfg.format == OutputFormat::json) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& row : rows)
      for (const auto& e : row.mc.estimates) {
        OrderedJson j = estimate_json(row.mc, e);
        j["dev_one_over_e"] = e.fraction - one_over_e;
        j["dev_two_over_e"] = e.fraction - two_over_e;
        j["dev_one_minus_one_over_e"] = e.fraction - one_minus;
        j["wecken_lower_bound"] = to_decimal(row.wecken_lower, prec);
        arr.push_back(j);
      }
    os << arr.dump() << '\n';
    return;
  }
  write_header_line(os, cfg);
  os << "n,p,samples,seed,shards,category,fraction,ci_low,ci_high,"
        "dev_one_over_e,dev_two_over_e,dev_one_minus_one_over_e,wecken_lower_bound\n";
  for (const auto& row : rows)
    for (const auto& e : row.mc.estimates)
      os << row.n << ',' << row.p << ',' << row.mc.samples << ',' << row.mc.seed << ',' << row.mc.shards << ','
         << e.category << ',' << format_double(e.fraction, prec) << ',' << format_double(e.ci_low, prec) << ','
         << format_double(e.ci_high, prec) << ',' << format_double(e.fraction - one_over_e, prec) << ','
         << format_double(e.fraction - two_over_e, prec) << ',' << format_double(e.fraction - one_minus, prec)
         << ',' << to_decimal(row.wecken_lower, prec) << '\n';
}

}  // namespace wecken
