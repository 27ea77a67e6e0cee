#pragma once

// Exact reduced simplicial homology over the integers.
//
// Boundary matrices are reduced by unimodular elimination on unit pivots
// (each step is a Smith normal form step: the pivot row and column are
// cleared and removed), and whatever survives is finished by a dense Smith
// normal form. Entries are machine integers with overflow checks; any
// overflow restarts the matrix with GMP integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tnnfibers/error.hpp"
#include "tnnfibers/posets.hpp"
#include "tnnfibers/simplicial.hpp"

namespace tnnfibers {

struct SmithInvariants {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, ascending
};

namespace detail {

struct IntegerOverflow {};

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow{};
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow{};
  return r;
}
inline mpz_class checked_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class checked_sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline bool is_unit(long long v) { return v == 1 || v == -1; }
inline bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }
inline mpz_class to_mpz(long long v) { return mpz_class(std::to_string(v)); }
inline mpz_class to_mpz(const mpz_class& v) { return v; }

template <class Int>
using SparseColumn = std::vector<std::pair<int, Int>>;

/// Dense Smith normal form; returns the nonzero invariant factors.
inline std::vector<mpz_class> dense_smith_diagonal(std::vector<std::vector<mpz_class>> m) {
  std::vector<mpz_class> diagonal;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto place_smallest = [&]() -> bool {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return false;
      std::swap(m[t], m[bi]);
      for (auto& row : m) std::swap(row[t], row[bj]);
      return true;
    };
    if (!place_smallest()) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) {
        // a smaller remainder exists in row or column t; move it to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < rows; ++i)
          if (m[i][t] != 0 && abs(m[i][t]) < abs(m[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t; j < cols; ++j)
          if (m[t][j] != 0 && abs(m[t][j]) < abs(m[bi][bj])) bi = t, bj = j;
        std::swap(m[t], m[bi]);
        for (auto& row : m) std::swap(row[t], row[bj]);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
          }
      if (divides) break;
    }
    diagonal.push_back(abs(m[t][t]));
  }
  return diagonal;
}

template <class Int>
SmithInvariants smith_invariants_impl(std::size_t rows, std::vector<SparseColumn<Int>> cols) {
  const std::size_t ncols = cols.size();
  std::vector<std::vector<int>> row_cols(rows);
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [r, v] : cols[c]) row_cols[static_cast<std::size_t>(r)].push_back(static_cast<int>(c));
  std::vector<char> col_alive(ncols, 1);
  SmithInvariants out;

  auto find_entry = [](const SparseColumn<Int>& col, int r) {
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int row) { return e.first < row; });
    return (it != col.end() && it->first == r) ? it : col.end();
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!col_alive[c] || cols[c].empty()) continue;
      int pivot_row = -1;
      std::size_t best = 0;
      Int pivot_value{};
      for (const auto& [r, v] : cols[c]) {
        if (!is_unit(v)) continue;
        std::size_t occupancy = row_cols[static_cast<std::size_t>(r)].size();
        if (pivot_row < 0 || occupancy < best) {
          pivot_row = r;
          best = occupancy;
          pivot_value = v;
        }
      }
      if (pivot_row < 0) continue;
      const SparseColumn<Int> pivot = cols[c];
      std::vector<int> touching = row_cols[static_cast<std::size_t>(pivot_row)];
      for (int c2 : touching) {
        if (static_cast<std::size_t>(c2) == c || !col_alive[static_cast<std::size_t>(c2)]) continue;
        auto& target = cols[static_cast<std::size_t>(c2)];
        auto hit = find_entry(target, pivot_row);
        if (hit == target.end()) continue;
        Int factor = checked_mul(hit->second, pivot_value);  // pivot is its own inverse
        SparseColumn<Int> merged;
        merged.reserve(target.size() + pivot.size());
        std::size_t a = 0, b = 0;
        while (a < target.size() || b < pivot.size()) {
          if (b == pivot.size() || (a < target.size() && target[a].first < pivot[b].first)) {
            merged.push_back(target[a++]);
          } else if (a == target.size() || pivot[b].first < target[a].first) {
            Int v = checked_sub(Int{0}, checked_mul(factor, pivot[b].second));
            row_cols[static_cast<std::size_t>(pivot[b].first)].push_back(c2);
            merged.emplace_back(pivot[b].first, v);
            ++b;
          } else {
            Int v = checked_sub(target[a].second, checked_mul(factor, pivot[b].second));
            if (v != 0) merged.emplace_back(target[a].first, v);
            ++a;
            ++b;
          }
        }
        target = std::move(merged);
      }
      col_alive[c] = 0;
      ++out.rank;
      progress = true;
    }
  }

  // Remainder without unit entries: dense Smith normal form.
  std::vector<std::size_t> rest_cols;
  std::map<int, std::size_t> rest_rows;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!col_alive[c] || cols[c].empty()) continue;
    rest_cols.push_back(c);
    for (const auto& e : cols[c]) rest_rows.emplace(e.first, 0);
  }
  if (!rest_cols.empty()) {
    std::size_t k = 0;
    for (auto& [r, idx] : rest_rows) idx = k++;
    std::vector<std::vector<mpz_class>> dense(rest_rows.size(), std::vector<mpz_class>(rest_cols.size(), 0));
    for (std::size_t j = 0; j < rest_cols.size(); ++j)
      for (const auto& [r, v] : cols[rest_cols[j]]) dense[rest_rows[r]][j] = to_mpz(v);
    for (auto& d : dense_smith_diagonal(std::move(dense))) {
      ++out.rank;
      if (d > 1) out.torsion.push_back(d);
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace detail

/// Rank and torsion invariant factors of an integer matrix given by sparse
/// columns (row index, value) sorted by row.
inline SmithInvariants smith_invariants(std::size_t rows, const std::vector<detail::SparseColumn<long long>>& cols) {
  try {
    return detail::smith_invariants_impl<long long>(rows, cols);
  } catch (const detail::IntegerOverflow&) {
    std::vector<detail::SparseColumn<mpz_class>> big(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, v] : cols[c]) big[c].emplace_back(r, detail::to_mpz(v));
    return detail::smith_invariants_impl<mpz_class>(rows, std::move(big));
  }
}

struct HomologyGroup {
  long betti = 0;
  std::vector<mpz_class> torsion;
  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

/// Reduced homology H~_k for k = -1 .. dim.
struct HomologyReport {
  std::map<int, HomologyGroup> groups;

  const HomologyGroup& at(int k) const {
    static const HomologyGroup zero;
    auto it = groups.find(k);
    return it == groups.end() ? zero : it->second;
  }
  bool acyclic() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.second.is_zero(); });
  }
  /// Reduced homology of the d-sphere (d = -1 is the complex {∅}).
  bool is_sphere(int d) const {
    for (const auto& [k, g] : groups) {
      bool want_z = (k == d);
      if (want_z ? !(g.betti == 1 && g.torsion.empty()) : !g.is_zero()) return false;
    }
    return groups.count(d) == 1;
  }
  bool torsion_free() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.second.torsion.empty(); });
  }
};

inline constexpr std::size_t kMaxHomologyFaces = 4'000'000;

inline HomologyReport reduced_homology(const FaceList& faces) {
  std::size_t total = 0;
  for (const auto& level : faces) total += level.size();
  if (total > kMaxHomologyFaces) throw Error(ErrorCode::TooLarge, std::to_string(total) + " faces");
  HomologyReport report;
  if (faces.empty() || faces[0].empty()) return report;  // void complex: no chain groups at all
  const int top = static_cast<int>(faces.size()) - 2;
  // ranks[k + 1] = rank of boundary C_k -> C_{k-1}, k = 0..top; ranks[0] = 0 (dimension -1)
  std::vector<SmithInvariants> boundary(static_cast<std::size_t>(top + 3));
  for (int k = 0; k <= top; ++k) {
    const auto& cells = faces[static_cast<std::size_t>(k + 1)];
    const auto& lower = faces[static_cast<std::size_t>(k)];
    std::vector<detail::SparseColumn<long long>> cols(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Simplex& s = cells[c];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex facet = s;
        facet.erase(facet.begin() + static_cast<long>(i));
        auto it = std::lower_bound(lower.begin(), lower.end(), facet);
        if (it == lower.end() || *it != facet) throw Error(ErrorCode::BadInput, "face list is not closed under subsets");
        cols[c].emplace_back(static_cast<int>(it - lower.begin()), (i % 2 == 0) ? 1LL : -1LL);
      }
      std::sort(cols[c].begin(), cols[c].end());
    }
    boundary[static_cast<std::size_t>(k + 1)] = smith_invariants(lower.size(), cols);
  }
  for (int k = -1; k <= top; ++k) {
    long chains = static_cast<long>(faces[static_cast<std::size_t>(k + 1)].size());
    long rank_out = static_cast<long>(boundary[static_cast<std::size_t>(k + 1)].rank);
    long rank_in = static_cast<long>(boundary[static_cast<std::size_t>(k + 2)].rank);
    HomologyGroup g;
    g.betti = chains - rank_out - rank_in;
    g.torsion = boundary[static_cast<std::size_t>(k + 2)].torsion;
    report.groups[k] = std::move(g);
  }
  return report;
}

inline HomologyReport reduced_homology(const SimplicialComplex& complex) { return reduced_homology(all_faces(complex)); }

enum class VerdictMode { Ball, Sphere, Acyclic };

/// Sphere mode demands the reduced homology of S^d; ball and acyclic modes
/// demand vanishing reduced homology (d is then only informational).
inline bool verdict(const HomologyReport& report, int d, VerdictMode mode) {
  if (mode == VerdictMode::Sphere) return report.is_sphere(d);
  return report.acyclic();
}

inline bool verdict(const SimplicialComplex& complex, int d, VerdictMode mode) {
  return verdict(reduced_homology(complex), d, mode);
}

/// Sphere oracle for check_cw_poset: the order complex of the interval is a
/// homology sphere of the given dimension.
inline bool order_complex_is_homology_sphere(const Poset& interval, int dimension) {
  return reduced_homology(chain_faces(interval)).is_sphere(dimension);
}

}  // namespace tnnfibers
