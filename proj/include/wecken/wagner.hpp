#pragma once

// Wagner tails of a free-group endomorphism and the remnant condition.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wecken/freegroup.hpp"

namespace wecken {

/// An endomorphism of F_n, given by the images of the generators.
class Endomorphism {
 public:
  Endomorphism(Rank rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
    if (images_.size() != static_cast<std::size_t>(rank.value()))
      throw std::invalid_argument("endomorphism of rank " + std::to_string(rank.value()) + " needs " +
                                  std::to_string(rank.value()) + " images, got " +
                                  std::to_string(images_.size()));
    for (const Word& w : images_)
      if (w.max_generator() > rank.value())
        throw ParseError("image word uses a generator beyond rank " + std::to_string(rank.value()));
  }

  Rank rank() const noexcept { return rank_; }
  /// phi(a_i) for 1 <= i <= n.
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<Word>& images() const noexcept { return images_; }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  Rank rank_;
  std::vector<Word> images_;
};

/// One fixed-point slot of the Wagner realization with its tail pair (W, W-bar).
///
/// Slot 0 is the base point with W = W-bar = 1. Every other slot comes from an
/// occurrence of a_location^sign at 1-based `position` of phi(a_location).
struct TailPair {
  int slot = 0;
  Word w;
  Word w_bar;
  int location = 0;
  int position = 0;
  int sign = 1;
};

/// Tail pairs in slot order: slot 0, then generators ascending and positions left to right.
inline std::vector<TailPair> wagner_tails(const Endomorphism& phi) {
  std::vector<TailPair> tails;
  tails.push_back(TailPair{});
  const int n = phi.rank().value();
  for (int i = 1; i <= n; ++i) {
    const Word& img = phi.image(i);
    for (std::size_t pos = 0; pos < img.size(); ++pos) {
      const Letter l = img[pos];
      if (l.generator() != i) continue;
      // img = v a_i^e vbar
      const Word v = img.subword(0, pos);
      const Word vbar_inv = invert(img.subword(pos + 1, img.size() - pos - 1));
      TailPair t;
      t.slot = static_cast<int>(tails.size());
      t.location = i;
      t.position = static_cast<int>(pos) + 1;
      t.sign = l.sign();
      if (l.sign() > 0) {
        t.w = v;
        t.w_bar = vbar_inv;
      } else {
        // v a_i^-1 is a prefix of img; vbar^-1 a_i is the inverse of the suffix a_i^-1 vbar.
        t.w = img.subword(0, pos + 1);
        t.w_bar = invert(img.subword(pos, img.size() - pos));
      }
      tails.push_back(std::move(t));
    }
  }
  return tails;
}

struct GeneratorDamage {
  std::size_t left = 0;   // L_i
  std::size_t right = 0;  // R_i
  std::ptrdiff_t remnant_length = 0;
};

struct RemnantReport {
  std::vector<GeneratorDamage> generators;  // index i-1 for a_i
  bool has_remnant = false;
};

/// Remnant check.
///
/// L_i is the longest cancellation into the front of phi(a_i) by any signed image
/// phi(a_j)^e other than phi(a_i)^-1; R_i is the same at the back. phi has remnant
/// when every image keeps a nonempty uncancelled middle, L_i + R_i < |phi(a_i)|.
inline RemnantReport remnant(const Endomorphism& phi) {
  const int n = phi.rank().value();
  RemnantReport rep;
  rep.generators.resize(static_cast<std::size_t>(n));
  rep.has_remnant = true;

  std::vector<Word> inverses;
  inverses.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) inverses.push_back(invert(phi.image(j)));

  for (int i = 1; i <= n; ++i) {
    const Word& wi = phi.image(i);
    GeneratorDamage& d = rep.generators[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j <= n; ++j) {
      const Word& pos = phi.image(j);
      const Word& neg = inverses[static_cast<std::size_t>(j - 1)];
      d.left = std::max(d.left, cancel_len(pos, wi));
      d.right = std::max(d.right, cancel_len(wi, pos));
      if (j != i) {
        d.left = std::max(d.left, cancel_len(neg, wi));
        d.right = std::max(d.right, cancel_len(wi, neg));
      }
    }
    d.remnant_length = static_cast<std::ptrdiff_t>(wi.size()) - static_cast<std::ptrdiff_t>(d.left + d.right);
    if (d.remnant_length <= 0) rep.has_remnant = false;
  }
  return rep;
}

inline bool has_remnant(const Endomorphism& phi) { return remnant(phi).has_remnant; }

enum class TailSide { w, w_bar };

struct TailRef {
  int slot = 0;
  TailSide side = TailSide::w;
  friend bool operator==(const TailRef&, const TailRef&) = default;
};

struct TailEquality {
  TailRef first;
  TailRef second;
  std::size_t length = 0;
  bool same_slot() const noexcept { return first.slot == second.slot; }
};

namespace detail {

inline const Word& tail_word(const std::vector<TailPair>& tails, TailRef r) {
  const TailPair& t = tails[static_cast<std::size_t>(r.slot)];
  return r.side == TailSide::w ? t.w : t.w_bar;
}

}  // namespace detail

/// Every unordered pair of equal tail occurrences except (W_0, W-bar_0).
///
/// Occurrences are ordered W_0, W-bar_0, W_1, W-bar_1, ...; records are emitted with
/// first < second in that order, sorted by first then second.
inline std::vector<TailEquality> tail_equalities(const std::vector<TailPair>& tails) {
  std::unordered_map<Word, std::vector<TailRef>, WordHash> groups;
  for (const TailPair& t : tails) {
    for (TailSide side : {TailSide::w, TailSide::w_bar}) {
      TailRef r{t.slot, side};
      auto [it, inserted] = groups.try_emplace(detail::tail_word(tails, r));
      it->second.push_back(r);
    }
  }
  std::vector<TailEquality> out;
  for (const auto& [word, refs] : groups) {
    for (std::size_t a = 0; a < refs.size(); ++a)
      for (std::size_t b = a + 1; b < refs.size(); ++b) {
        if (refs[a].slot == 0 && refs[b].slot == 0) continue;
        out.push_back(TailEquality{refs[a], refs[b], word.size()});
      }
  }
  auto key = [](const TailRef& r) { return 2 * r.slot + (r.side == TailSide::w_bar ? 1 : 0); };
  std::sort(out.begin(), out.end(), [&](const TailEquality& x, const TailEquality& y) {
    if (key(x.first) != key(y.first)) return key(x.first) < key(y.first);
    return key(x.second) < key(y.second);
  });
  return out;
}

}  // namespace wecken
