#pragma once

// Brute-force reference implementations used only by tests. Nothing here calls
// into the library's reduction, tail or remnant code; words are plain vectors of
// signed generator indices.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

/// Removes the leftmost cancelling pair until none remains.
inline Seq reduce(Seq s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == -s[i + 1]) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return s;
}

inline Seq inverse(const Seq& s) {
  Seq out(s.rbegin(), s.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Seq concat(Seq a, const Seq& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline bool reduced(const Seq& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == -s[i - 1]) return false;
  return true;
}

inline int code(int x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

/// Every sequence over {+-1..+-n} of length <= p, filtered to reduced ones, sorted shortlex.
inline std::vector<Seq> ball(int n, int p) {
  std::vector<Seq> all{{}};
  std::vector<Seq> frontier{{}};
  for (int len = 1; len <= p; ++len) {
    std::vector<Seq> next;
    for (const Seq& s : frontier)
      for (int g = 1; g <= n; ++g)
        for (int sg : {1, -1}) next.push_back(concat(s, {sg * g}));
    frontier = next;
    for (const Seq& s : next)
      if (reduced(s)) all.push_back(s);
  }
  std::sort(all.begin(), all.end(), [](const Seq& a, const Seq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](int x, int y) { return code(x) < code(y); });
  });
  return all;
}

struct Tail {
  Seq w, w_bar;
  int location = 0;
};

/// Tail pairs straight from the two-case definition, reducing every product.
inline std::vector<Tail> tails(const std::vector<Seq>& images) {
  std::vector<Tail> out{Tail{}};
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int gen = static_cast<int>(i) + 1;
    const Seq& img = images[i];
    for (std::size_t pos = 0; pos < img.size(); ++pos) {
      if (std::abs(img[pos]) != gen) continue;
      const Seq v(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(pos));
      const Seq vbar(img.begin() + static_cast<std::ptrdiff_t>(pos) + 1, img.end());
      Tail t;
      t.location = gen;
      if (img[pos] > 0) {
        t.w = reduce(v);
        t.w_bar = reduce(inverse(vbar));
      } else {
        t.w = reduce(concat(v, {-gen}));
        t.w_bar = reduce(concat(inverse(vbar), {gen}));
      }
      out.push_back(t);
    }
  }
  return out;
}

/// Lengths k at which two tail occurrences coincide, excluding the base pair.
inline std::set<std::size_t> equality_lengths(const std::vector<Tail>& ts) {
  std::vector<Seq> occ;
  for (const Tail& t : ts) {
    occ.push_back(t.w);
    occ.push_back(t.w_bar);
  }
  std::set<std::size_t> ks;
  for (std::size_t a = 0; a < occ.size(); ++a)
    for (std::size_t b = a + 1; b < occ.size(); ++b) {
      if (a == 0 && b == 1) continue;
      if (occ[a] == occ[b]) ks.insert(occ[a].size());
    }
  return ks;
}

/// Cancellation measured from the length drop of the reduced product.
inline std::size_t cancellation(const Seq& u, const Seq& v) {
  return (u.size() + v.size() - reduce(concat(u, v)).size()) / 2;
}

inline bool has_remnant(const std::vector<Seq>& images) {
  const std::size_t n = images.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t left = 0, right = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (int e : {1, -1}) {
        if (j == i && e == -1) continue;
        const Seq x = e > 0 ? images[j] : inverse(images[j]);
        left = std::max(left, cancellation(x, images[i]));
        right = std::max(right, cancellation(images[i], x));
      }
    if (left + right >= images[i].size()) return false;
  }
  return true;
}

}  // namespace oracle
