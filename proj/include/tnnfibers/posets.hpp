#pragma once

// Finite posets on elements 0..n-1 with a bit-matrix order relation.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "tnnfibers/error.hpp"

namespace tnnfibers {

class Poset {
 public:
  Poset() = default;

  /// Builds the poset whose order is `leq(i, j)`; the relation must be a
  /// partial order (checked: reflexive, antisymmetric, transitive).
  template <class Leq>
  static Poset from_relation(std::size_t n, Leq&& leq) {
    Poset p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || leq(static_cast<int>(i), static_cast<int>(j))) p.set_bit(i, j);
    p.check_partial_order();
    p.compute_covers();
    return p;
  }

  std::size_t size() const { return n_; }

  bool leq(int i, int j) const {
    return (up_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1U;
  }
  bool less(int i, int j) const { return i != j && leq(i, j); }

  /// Cover pairs (i, j) with i < j and nothing strictly between, sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(n_); ++j) {
      bool minimal = true;
      for (int i = 0; i < static_cast<int>(n_) && minimal; ++i) minimal = !less(i, j);
      if (minimal) out.push_back(j);
    }
    return out;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(n_); ++i) {
      bool maximal = true;
      for (int j = 0; j < static_cast<int>(n_) && maximal; ++j) maximal = !less(i, j);
      if (maximal) out.push_back(i);
    }
    return out;
  }

  /// Subposet on `elements`, renumbered in the given order.
  Poset induced(const std::vector<int>& elements) const {
    return from_relation(elements.size(), [&](int a, int b) { return leq(elements[a], elements[b]); });
  }

  /// Copy with a new least element 0; old element i becomes i + 1.
  Poset with_bottom() const {
    return from_relation(n_ + 1, [&](int a, int b) { return a == 0 || (b != 0 && leq(a - 1, b - 1)); });
  }

  /// Elements strictly between lo and hi.
  std::vector<int> open_interval(int lo, int hi) const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(n_); ++k)
      if (less(lo, k) && less(k, hi)) out.push_back(k);
    return out;
  }

  /// A linear extension (elements sorted by down-set size, ties by index).
  std::vector<int> linear_extension() const {
    std::vector<int> order(n_);
    std::vector<int> below(n_, 0);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) below[j] += leq(static_cast<int>(i), static_cast<int>(j));
    for (std::size_t k = 0; k < n_; ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
    return order;
  }

  int down_degree(int j) const { return static_cast<int>(lower_covers_[static_cast<std::size_t>(j)].size()); }
  int up_degree(int i) const { return static_cast<int>(upper_covers_[static_cast<std::size_t>(i)].size()); }
  const std::vector<int>& lower_covers(int j) const { return lower_covers_[static_cast<std::size_t>(j)]; }

 private:
  explicit Poset(std::size_t n) : n_(n), up_(n, std::vector<std::uint64_t>((n + 63) / 64, 0)) {}

  void set_bit(std::size_t i, std::size_t j) { up_[i][j >> 6] |= std::uint64_t{1} << (j & 63); }

  void check_partial_order() const {
    for (int i = 0; i < static_cast<int>(n_); ++i) {
      for (int j = 0; j < static_cast<int>(n_); ++j) {
        if (i != j && leq(i, j) && leq(j, i)) throw Error(ErrorCode::BadInput, "relation is not antisymmetric");
        if (!leq(i, j)) continue;
        for (std::size_t w = 0; w < up_[j].size(); ++w)
          if (up_[j][w] & ~up_[i][w]) throw Error(ErrorCode::BadInput, "relation is not transitive");
      }
    }
  }

  void compute_covers() {
    lower_covers_.assign(n_, {});
    upper_covers_.assign(n_, {});
    covers_.clear();
    const std::size_t words = (n_ + 63) / 64;
    // down_[j] = elements <= j
    std::vector<std::vector<std::uint64_t>> down(n_, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (leq(static_cast<int>(i), static_cast<int>(j))) down[j][i >> 6] |= std::uint64_t{1} << (i & 63);
    for (int i = 0; i < static_cast<int>(n_); ++i) {
      for (int j = 0; j < static_cast<int>(n_); ++j) {
        if (!less(i, j)) continue;
        int between = 0;
        for (std::size_t w = 0; w < words; ++w) between += std::popcount(up_[i][w] & down[j][w]);
        if (between == 2) {
          covers_.emplace_back(i, j);
          lower_covers_[j].push_back(i);
          upper_covers_[i].push_back(j);
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<std::vector<std::uint64_t>> up_;  // up_[i] = elements >= i
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> lower_covers_, upper_covers_;
};

/// Rank function with minimal elements at rank 0 and every cover raising the
/// rank by exactly one, if one exists. Maximal elements may sit at different
/// ranks (pure gradedness is not required).
inline std::optional<std::vector<int>> rank_function(const Poset& poset) {
  std::vector<int> rank(poset.size(), -1);
  for (int x : poset.linear_extension()) {
    const auto& below = poset.lower_covers(x);
    if (below.empty()) {
      rank[x] = 0;
      continue;
    }
    int r = rank[below.front()] + 1;
    for (int b : below)
      if (rank[b] + 1 != r) return std::nullopt;
    rank[x] = r;
  }
  return rank;
}

inline bool is_graded(const Poset& poset) { return rank_function(poset).has_value(); }

/// Graded, and every interval of length two has exactly two interior elements.
inline bool is_thin(const Poset& poset) {
  auto rank = rank_function(poset);
  if (!rank) return false;
  for (int x = 0; x < static_cast<int>(poset.size()); ++x) {
    for (int y = 0; y < static_cast<int>(poset.size()); ++y) {
      if (!poset.less(x, y) || (*rank)[y] - (*rank)[x] != 2) continue;
      if (poset.open_interval(x, y).size() != 2) return false;
    }
  }
  return true;
}

/// Backtracking isomorphism search. Candidates are pruned by per-element
/// invariants (down-set size, up-set size, cover degrees); the returned
/// witness maps element i of `a` to witness[i] of `b`.
inline std::optional<std::vector<int>> poset_isomorphism(const Poset& a, const Poset& b) {
  const int n = static_cast<int>(a.size());
  if (b.size() != a.size() || a.covers().size() != b.covers().size()) return std::nullopt;
  auto signature = [](const Poset& p, int x) {
    int below = 0, above = 0;
    for (int y = 0; y < static_cast<int>(p.size()); ++y) {
      below += p.leq(y, x);
      above += p.leq(x, y);
    }
    return std::make_tuple(below, above, p.down_degree(x), p.up_degree(x));
  };
  std::vector<std::tuple<int, int, int, int>> sig_a(n), sig_b(n);
  for (int x = 0; x < n; ++x) {
    sig_a[x] = signature(a, x);
    sig_b[x] = signature(b, x);
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> order = a.linear_extension();
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> extend = [&](int depth) {
    if (depth == n) return true;
    int x = order[depth];
    for (int y = 0; y < n; ++y) {
      if (used[y] || sig_b[y] != sig_a[x]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        int z = order[k];
        ok = a.leq(z, x) == b.leq(map[z], y) && a.leq(x, z) == b.leq(y, map[z]);
      }
      if (!ok) continue;
      map[x] = y;
      used[y] = 1;
      if (extend(depth + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

inline bool poset_isomorphic(const Poset& a, const Poset& b) { return poset_isomorphism(a, b).has_value(); }

struct CwPosetReport {
  bool has_bottom = false;
  bool graded = false;
  bool thin = false;
  bool cw = false;
  std::vector<int> failing_elements;  // v whose open interval (0, v) is not a homology sphere
};

/// CW-poset test: a least element, gradedness, and for every v above the
/// bottom the open interval (0, v) must be a sphere of dimension
/// rank(v) - 2 according to `sphere_oracle(subposet, dimension)`.
/// Homology spheres are accepted as the certificate.
template <class SphereOracle>
CwPosetReport check_cw_poset(const Poset& poset, SphereOracle&& sphere_oracle) {
  CwPosetReport report;
  auto minimal = poset.minimal_elements();
  report.has_bottom = minimal.size() == 1 && poset.size() >= 2;
  auto rank = rank_function(poset);
  report.graded = rank.has_value();
  report.thin = is_thin(poset);
  if (!report.has_bottom || !report.graded) return report;
  int bottom = minimal.front();
  for (int v = 0; v < static_cast<int>(poset.size()); ++v) {
    if (v == bottom) continue;
    Poset interval = poset.induced(poset.open_interval(bottom, v));
    if (!sphere_oracle(interval, (*rank)[v] - 2)) report.failing_elements.push_back(v);
  }
  report.cw = report.failing_elements.empty();
  return report;
}

}  // namespace tnnfibers
