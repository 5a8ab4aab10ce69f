#pragma once

// Reduced-word algebra over the free group F(a_1, ..., a_n).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wecken {

/// Raised for any malformed or out-of-range word input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rank of a free group; n >= 1.
class Rank {
 public:
  constexpr explicit Rank(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("rank must be >= 1");
  }
  constexpr int value() const noexcept { return n_; }
  /// Number of signed letters, 2n.
  constexpr int letters() const noexcept { return 2 * n_; }
  friend constexpr bool operator==(Rank, Rank) = default;

 private:
  int n_;
};

/// A signed generator a_i^{+1} or a_i^{-1}.
///
/// Letters are ordered canonically: a_1 < a_1^-1 < a_2 < a_2^-1 < ...
/// The canonical code of a letter is its position in that order, so
/// inverse letters differ only in the low bit of the code.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : value_(sign < 0 ? -generator : generator) {
    if (generator < 1) throw ParseError("generator index must be >= 1");
    if (sign != 1 && sign != -1) throw ParseError("letter sign must be +1 or -1");
  }

  /// From the signed-integer form, e.g. -2 for a_2^-1.
  static constexpr Letter from_signed(int v) {
    if (v == 0) throw ParseError("letter 0 is not a generator");
    return Letter(v < 0 ? -v : v, v < 0 ? -1 : 1);
  }
  static constexpr Letter from_code(int code) noexcept {
    Letter l;
    int g = code / 2 + 1;
    l.value_ = (code & 1) ? -g : g;
    return l;
  }

  constexpr int generator() const noexcept { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const noexcept { return value_ < 0 ? -1 : 1; }
  constexpr int signed_value() const noexcept { return value_; }
  constexpr int code() const noexcept { return 2 * (generator() - 1) + (value_ < 0 ? 1 : 0); }
  constexpr Letter inverse() const noexcept {
    Letter l;
    l.value_ = -value_;
    return l;
  }
  constexpr bool is_inverse_of(Letter other) const noexcept { return value_ == -other.value_; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) noexcept {
    return a.code() <=> b.code();
  }

 private:
  std::int32_t value_ = 1;
};

class Word;
Word reduce(std::span<const Letter> letters);

/// A freely reduced word. Immutable once built; every operation returns a new word.
class Word {
 public:
  Word() = default;

  /// Builds a word from a letter sequence, freely reducing it.
  Word(std::initializer_list<int> signed_letters) {
    std::vector<Letter> raw;
    raw.reserve(signed_letters.size());
    for (int v : signed_letters) raw.push_back(Letter::from_signed(v));
    *this = reduce(raw);
  }

  /// Wraps letters the caller guarantees are already reduced.
  static Word from_reduced(std::vector<Letter> letters) noexcept {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  Letter front() const noexcept { return letters_.front(); }
  Letter back() const noexcept { return letters_.back(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// Largest generator index used, 0 for the empty word.
  int max_generator() const noexcept {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, l.generator());
    return m;
  }

  /// Subword [pos, pos+len); subwords of reduced words are reduced.
  Word subword(std::size_t pos, std::size_t len) const {
    return from_reduced(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                            letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
  }

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order: by length, then lexicographic in canonical letter order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

/// Free reduction by a single left-to-right stack pass.
inline Word reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back().is_inverse_of(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word::from_reduced(std::move(out));
}

/// Reduction with generator-range validation against `rank`.
inline Word reduce(std::span<const Letter> letters, Rank rank) {
  for (Letter l : letters)
    if (l.generator() > rank.value())
      throw ParseError("generator index " + std::to_string(l.generator()) + " exceeds rank " +
                       std::to_string(rank.value()));
  return reduce(letters);
}

inline bool is_reduced(std::span<const Letter> letters) noexcept {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i].is_inverse_of(letters[i - 1])) return false;
  return true;
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word::from_reduced(std::move(out));
}

/// Largest t such that the length-t suffix of u is the inverse of the length-t prefix of v.
inline std::size_t cancel_len(const Word& u, const Word& v) noexcept {
  std::size_t t = 0;
  const std::size_t limit = std::min(u.size(), v.size());
  while (t < limit && u[u.size() - 1 - t].is_inverse_of(v[t])) ++t;
  return t;
}

inline Word multiply(const Word& u, const Word& v) {
  const std::size_t t = cancel_len(u, v);
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * t);
  out.insert(out.end(), u.begin(), u.end() - static_cast<std::ptrdiff_t>(t));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(t), v.end());
  return Word::from_reduced(std::move(out));
}

inline Word multiply(const Word& u, Letter l) {
  return multiply(u, Word::from_reduced({l}));
}

/// u^e for e in {+1, -1}.
inline Word signed_power(const Word& u, int sign) { return sign < 0 ? invert(u) : u; }

// ---------------------------------------------------------------------------
// Text codecs

enum class WordStyle { signed_int, alpha };

struct ParsedWord {
  Word word;
  bool cancelled = false;  // input was not reduced and got reduced
};

namespace detail {

inline Letter alpha_letter(char c) {
  if (c >= 'a' && c <= 'z') return Letter(c - 'a' + 1, 1);
  if (c >= 'A' && c <= 'Z') return Letter(c - 'A' + 1, -1);
  throw ParseError(std::string("invalid alpha letter '") + c + "'");
}

inline int parse_signed_token(std::string_view tok) {
  std::size_t i = 0;
  bool neg = false;
  if (i < tok.size() && (tok[i] == '-' || tok[i] == '+')) {
    neg = tok[i] == '-';
    ++i;
  }
  if (i == tok.size()) throw ParseError("malformed token '" + std::string(tok) + "'");
  long long v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') throw ParseError("malformed token '" + std::string(tok) + "'");
    v = v * 10 + (tok[i] - '0');
    if (v > std::numeric_limits<int>::max()) throw ParseError("token out of range '" + std::string(tok) + "'");
  }
  if (v == 0) throw ParseError("token '0' is not a generator");
  return static_cast<int>(neg ? -v : v);
}

}  // namespace detail

/// Parses "1 -2 1" (signed-integer form, "e" for the empty word) or "abA" (alpha form,
/// uppercase = inverse, "1" for the empty word).
inline ParsedWord parse_word(std::string_view text, Rank rank, WordStyle style = WordStyle::signed_int) {
  std::vector<Letter> raw;
  if (style == WordStyle::alpha) {
    if (rank.value() > 26) throw ParseError("alpha format requires rank <= 26");
    // "e" is a_5 here, so the identity is written "1".
    std::string compact;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    if (compact != "1")
      for (char c : compact) raw.push_back(detail::alpha_letter(c));
  } else {
    std::size_t i = 0;
    bool saw_empty_marker = false;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i == text.size()) break;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      std::string_view tok = text.substr(i, j - i);
      if (tok == "e") {
        saw_empty_marker = true;
      } else {
        raw.push_back(Letter::from_signed(detail::parse_signed_token(tok)));
      }
      i = j;
    }
    if (saw_empty_marker && !raw.empty()) throw ParseError("'e' cannot be mixed with letters");
  }
  ParsedWord out;
  out.word = reduce(raw, rank);
  out.cancelled = out.word.size() != raw.size();
  return out;
}

inline std::string format_word(const Word& w, WordStyle style = WordStyle::signed_int) {
  if (w.empty()) return style == WordStyle::alpha ? "1" : "e";
  std::string s;
  if (style == WordStyle::alpha) {
    for (Letter l : w) {
      if (l.generator() > 26) throw std::invalid_argument("alpha format requires generators <= 26");
      s += static_cast<char>((l.sign() > 0 ? 'a' : 'A') + l.generator() - 1);
    }
    return s;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i].signed_value());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Balls G_p

/// G_p: all reduced words of length 0..max_len over the given rank (empty word included).
struct BallSpec {
  Rank rank;
  int max_len;

  BallSpec(Rank r, int p) : rank(r), max_len(p) {
    if (p < 0) throw std::invalid_argument("max_len must be >= 0");
  }
};

/// Streams G_p in canonical order: by length, then lexicographic in letter order.
class BallEnumerator {
 public:
  explicit BallEnumerator(BallSpec spec) : spec_(spec) {}

  std::optional<Word> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return Word{};
    }
    if (!advance()) {
      done_ = true;
      return std::nullopt;
    }
    std::vector<Letter> letters;
    letters.reserve(codes_.size());
    for (int c : codes_) letters.push_back(Letter::from_code(c));
    return Word::from_reduced(std::move(letters));
  }

 private:
  static int smallest_after(int prev) noexcept { return prev == 1 ? 1 : 0; }

  bool advance() {
    const int top = spec_.rank.letters() - 1;
    // Successor among reduced code strings of the current length.
    for (std::size_t i = codes_.size(); i-- > 0;) {
      int c = codes_[i] + 1;
      if (i > 0 && c == (codes_[i - 1] ^ 1)) ++c;
      if (c <= top) {
        codes_[i] = c;
        for (std::size_t j = i + 1; j < codes_.size(); ++j) codes_[j] = smallest_after(codes_[j - 1]);
        return true;
      }
    }
    // Length exhausted: move to the first word of the next length.
    if (static_cast<int>(codes_.size()) >= spec_.max_len) return false;
    codes_.assign(codes_.size() + 1, 0);
    for (std::size_t j = 1; j < codes_.size(); ++j) codes_[j] = smallest_after(codes_[j - 1]);
    return true;
  }

  BallSpec spec_;
  std::vector<int> codes_;
  bool started_ = false;
  bool done_ = false;
};

/// Materialized G_p in canonical order.
inline std::vector<Word> enumerate_ball(BallSpec spec) {
  std::vector<Word> out;
  BallEnumerator e(spec);
  while (auto w = e.next()) out.push_back(std::move(*w));
  return out;
}

/// Uniform sampler over G_p.
///
/// The length is drawn with probability W(k)/|G_p| (W(0) = 1), then letters are
/// drawn uniformly among the non-cancelling choices. When |G_p| fits in 64 bits the
/// length draw is an exact integer inverse-CDF lookup; otherwise the cumulative
/// weights are held in long double.
class BallSampler {
 public:
  explicit BallSampler(BallSpec spec) : spec_(spec) {
    const std::uint64_t n2 = static_cast<std::uint64_t>(spec.rank.letters());
    // Exact path: cumulative counts while they fit.
    std::uint64_t shell = 1, total = 0;
    exact_ = true;
    for (int k = 0; k <= spec.max_len; ++k) {
      if (k == 1) shell = n2;
      else if (k > 1) {
        if (shell > std::numeric_limits<std::uint64_t>::max() / (n2 - 1 == 0 ? 1 : n2 - 1)) {
          exact_ = false;
          break;
        }
        shell *= (n2 - 1);
      }
      if (total > std::numeric_limits<std::uint64_t>::max() - shell) {
        exact_ = false;
        break;
      }
      total += shell;
      exact_cdf_.push_back(total);
    }
    if (!exact_) {
      exact_cdf_.clear();
      // Weights relative to the top shell: W(k)/W(p) = (2n-1)^{k-p}, W(0)/W(p) = 1/W(p).
      const long double q = static_cast<long double>(n2 - 1);
      std::vector<long double> w(static_cast<std::size_t>(spec.max_len) + 1);
      long double r = 1.0L;
      for (int k = spec.max_len; k >= 1; --k) {
        w[static_cast<std::size_t>(k)] = r;
        r /= q;
      }
      w[0] = w[1] / static_cast<long double>(n2);
      long double acc = 0;
      for (long double x : w) {
        acc += x;
        float_cdf_.push_back(acc);
      }
      for (auto& x : float_cdf_) x /= acc;
      float_cdf_.back() = 1.0L;
    }
  }

  template <class Rng>
  int sample_length(Rng& rng) const {
    if (exact_) {
      std::uniform_int_distribution<std::uint64_t> d(0, exact_cdf_.back() - 1);
      const std::uint64_t r = d(rng);
      return static_cast<int>(std::upper_bound(exact_cdf_.begin(), exact_cdf_.end(), r) - exact_cdf_.begin());
    }
    std::uniform_real_distribution<long double> d(0.0L, 1.0L);
    const long double r = d(rng);
    auto it = std::upper_bound(float_cdf_.begin(), float_cdf_.end(), r);
    if (it == float_cdf_.end()) --it;
    return static_cast<int>(it - float_cdf_.begin());
  }

  template <class Rng>
  Word operator()(Rng& rng) const {
    const int len = sample_length(rng);
    const int n2 = spec_.rank.letters();
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(len));
    if (len > 0) {
      std::uniform_int_distribution<int> first(0, n2 - 1);
      std::uniform_int_distribution<int> rest(0, n2 - 2);
      int prev = first(rng);
      letters.push_back(Letter::from_code(prev));
      for (int k = 1; k < len; ++k) {
        int c = rest(rng);
        if (c >= (prev ^ 1)) ++c;
        letters.push_back(Letter::from_code(c));
        prev = c;
      }
    }
    return Word::from_reduced(std::move(letters));
  }

  const BallSpec& spec() const noexcept { return spec_; }

 private:
  BallSpec spec_;
  bool exact_ = true;
  std::vector<std::uint64_t> exact_cdf_;
  std::vector<long double> float_cdf_;
};

template <class Rng>
Word sample_word(BallSpec spec, Rng& rng) {
  return BallSampler(spec)(rng);
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
    for (Letter l : w) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.signed_value())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace wecken
