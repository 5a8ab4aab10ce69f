#pragma once

// Membership in R_n, V'_n, V_n, A_{k,n}, B_n, Wecken certification, and the
// tail-merging partition of fixed-point slots.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wecken/freegroup.hpp"
#include "wecken/wagner.hpp"

namespace wecken {

enum class WeckenStatus { certified_v, certified_b, undetermined, no_remnant };

constexpr std::string_view to_string(WeckenStatus s) noexcept {
  switch (s) {
    case WeckenStatus::certified_v: return "certified_v";
    case WeckenStatus::certified_b: return "certified_b";
    case WeckenStatus::undetermined: return "undetermined";
    case WeckenStatus::no_remnant: return "no_remnant";
  }
  return "undetermined";
}

struct Classification {
  bool has_remnant = false;
  /// Lengths of tail equalities, ascending, computed regardless of remnant.
  std::vector<std::size_t> equality_lengths;
  bool in_vprime = false;
  bool in_v = false;
  bool in_a0 = false;
  /// k >= 1 with phi in A_{k,n}; empty without remnant.
  std::vector<std::size_t> ak;
  bool in_b = false;
  WeckenStatus wecken = WeckenStatus::no_remnant;

  bool in_ak(std::size_t k) const noexcept {
    if (k == 0) return in_a0;
    return std::binary_search(ak.begin(), ak.end(), k);
  }
  bool certified() const noexcept {
    return wecken == WeckenStatus::certified_v || wecken == WeckenStatus::certified_b;
  }
};

/// Sorted distinct lengths over which some pair of tail occurrences agree,
/// ignoring the base pair W_0 = W-bar_0.
inline std::vector<std::size_t> equality_lengths(const std::vector<TailPair>& tails) {
  std::unordered_map<Word, int, WordHash> count;
  count.reserve(tails.size() * 2);
  for (const TailPair& t : tails) {
    ++count[t.w];
    ++count[t.w_bar];
  }
  std::vector<std::size_t> out;
  for (const auto& [word, c] : count) {
    // The empty word always appears twice as W_0, W-bar_0.
    if (c > (word.empty() ? 2 : 1)) out.push_back(word.size());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Classification classify(const Endomorphism& phi) {
  Classification c;
  c.has_remnant = has_remnant(phi);
  c.equality_lengths = equality_lengths(wagner_tails(phi));
  const bool has_zero = !c.equality_lengths.empty() && c.equality_lengths.front() == 0;
  c.in_vprime = c.equality_lengths.empty();
  c.in_v = c.in_vprime && c.has_remnant;
  if (c.has_remnant) {
    c.in_a0 = has_zero;
    for (std::size_t k : c.equality_lengths)
      if (k >= 1) c.ak.push_back(k);
    c.in_b = has_zero && c.ak.empty();
  }
  if (!c.has_remnant)
    c.wecken = WeckenStatus::no_remnant;
  else if (c.in_v)
    c.wecken = WeckenStatus::certified_v;
  else if (c.in_b)
    c.wecken = WeckenStatus::certified_b;
  else
    c.wecken = WeckenStatus::undetermined;
  return c;
}

/// Direct test for A_0 membership without tails: some phi(a_i) begins or ends with a_i.
inline bool is_a0_by_boundary(const Endomorphism& phi) {
  const int n = phi.rank().value();
  const auto own = [](int i) { return Letter(i, 1); };
  for (int i = 1; i <= n; ++i) {
    const Word& w = phi.image(i);
    if (!w.empty() && (w.front() == own(i) || w.back() == own(i))) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Fixed-point classes

struct FixedPointPartition {
  /// Parts as ascending slot lists, ordered by smallest slot.
  std::vector<std::vector<int>> parts;
  /// Index of each slot: +1 for the base point, -1 otherwise.
  std::vector<int> slot_index;
  /// Sum of slot indices per part, aligned with `parts`.
  std::vector<int> part_index;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Finest partition of slots in which slots sharing a tail value are merged.
inline FixedPointPartition fixed_point_partition(const std::vector<TailPair>& tails) {
  const std::size_t m = tails.size();
  detail::DisjointSets ds(m);
  std::unordered_map<Word, std::size_t, WordHash> first_slot;
  for (std::size_t s = 0; s < m; ++s) {
    for (const Word* w : {&tails[s].w, &tails[s].w_bar}) {
      auto [it, inserted] = first_slot.try_emplace(*w, s);
      if (!inserted) ds.unite(it->second, s);
    }
  }
  FixedPointPartition out;
  out.slot_index.resize(m);
  std::unordered_map<std::size_t, std::size_t> part_of_root;
  for (std::size_t s = 0; s < m; ++s) {
    out.slot_index[s] = s == 0 ? 1 : -1;
    const std::size_t root = ds.find(s);
    auto [it, inserted] = part_of_root.try_emplace(root, out.parts.size());
    if (inserted) {
      out.parts.emplace_back();
      out.part_index.push_back(0);
    }
    out.parts[it->second].push_back(static_cast<int>(s));
    out.part_index[it->second] += out.slot_index[s];
  }
  return out;
}

struct NielsenBound {
  int value = 0;
  /// False when phi lacks remnant; the value is then 0 and carries no meaning.
  bool justified = false;
};

/// Number of merged classes with nonzero index. Exact for certified inputs;
/// a conservative lower bound otherwise.
inline NielsenBound nielsen_lower_bound(const Endomorphism& phi) {
  if (!has_remnant(phi)) return {};
  const FixedPointPartition p = fixed_point_partition(wagner_tails(phi));
  NielsenBound b;
  b.justified = true;
  b.value = static_cast<int>(std::count_if(p.part_index.begin(), p.part_index.end(), [](int x) { return x != 0; }));
  return b;
}

}  // namespace wecken
