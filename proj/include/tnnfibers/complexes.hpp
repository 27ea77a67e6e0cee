#pragma once

// Subword complexes, interior faces, and the strata poset {P ⊆ Q : δ(P) = w}.
//
// The strata poset is at once the closed-strata poset of a fiber and the
// face poset of the interior dual block complex of Δ(Q, w): P ↦ Q∖P is a
// containment-reversing bijection onto the interior faces.

#include <algorithm>
#include <set>
#include <vector>

#include "tnnfibers/demazure.hpp"
#include "tnnfibers/posets.hpp"
#include "tnnfibers/simplicial.hpp"

namespace tnnfibers {

inline constexpr int kMaxSubsetWord = 22;

namespace detail {

inline void require_subset_scale(const Word& word) {
  if (word.length() > kMaxSubsetWord) {
    throw Error(ErrorCode::TooLarge, "subset enumeration is capped at " + std::to_string(kMaxSubsetWord) + " letters");
  }
}

inline void require_contains(const CoxeterSystem& sys, const Word& q, Element w) {
  if (!contains(sys, q, w)) throw Error(ErrorCode::NotContained, format_word(q) + " does not contain " + sys.name(w));
}

inline std::vector<int> position_labels(const Word& q) {
  std::vector<int> labels(q.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = static_cast<int>(k) + 1;
  return labels;
}

inline Simplex to_simplex(PositionSet set) {
  Simplex s;
  for (int p : positions_of(set)) s.push_back(p - 1);
  return s;
}

}  // namespace detail

/// Position sets P ⊆ Q of size l(w) whose letters form a reduced word for w.
inline std::vector<PositionSet> reduced_subwords(const CoxeterSystem& sys, const Word& q, Element w) {
  detail::require_subset_scale(q);
  std::vector<PositionSet> out;
  const int len = sys.length(w);
  for (PositionSet p = 0; p <= full_set(q.length()); ++p) {
    if (cardinality(p) == len && product(sys, q.subword(p)) == w) out.push_back(p);
    if (p == full_set(q.length())) break;
  }
  return out;
}

/// Δ(Q, w): vertices are the positions of Q; R is a face iff Q∖R contains
/// w. The facets are the complements of reduced subwords for w. When Q is
/// itself a reduced word for w the result is {∅}; callers can detect this
/// through only_empty_face().
inline SimplicialComplex subword_complex(const CoxeterSystem& sys, const Word& q, Element w) {
  sys.require_valid(q);
  detail::require_contains(sys, q, w);
  std::vector<Simplex> facets;
  for (PositionSet p : reduced_subwords(sys, q, w)) facets.push_back(detail::to_simplex(full_set(q.length()) & ~p));
  return SimplicialComplex::from_faces(detail::position_labels(q), std::move(facets));
}

/// R ⊆ Q is a face of Δ(Q, w) (direct test).
inline bool is_subword_complex_face(const CoxeterSystem& sys, const Word& q, Element w, PositionSet r) {
  return contains(sys, q.subword(full_set(q.length()) & ~r), w);
}

/// Interior faces of Δ(Q, w): the R with δ(Q∖R) = w, sorted.
inline std::vector<PositionSet> interior_faces(const CoxeterSystem& sys, const Word& q, Element w) {
  sys.require_valid(q);
  detail::require_subset_scale(q);
  detail::require_contains(sys, q, w);
  const auto delta = subword_demazure_table(sys, q);
  const PositionSet all = full_set(q.length());
  std::vector<PositionSet> out;
  for (std::size_t p = 0; p < delta.size(); ++p)
    if (delta[p] == w) out.push_back(all & ~static_cast<PositionSet>(p));
  std::sort(out.begin(), out.end(), position_set_less);
  return out;
}

struct StrataPoset {
  Word ambient;
  Element target;
  std::vector<PositionSet> elements;  // sorted by size, then lexicographically
  std::vector<int> dims;              // |P| - l(w)
  Poset order;                        // inclusion, on element indices

  bool empty() const { return elements.empty(); }
  bool has_top() const { return !elements.empty() && elements.back() == full_set(ambient.length()); }
};

inline StrataPoset make_strata_poset(const CoxeterSystem& sys, Word ambient, Element w, std::vector<PositionSet> elements) {
  std::sort(elements.begin(), elements.end(), position_set_less);
  StrataPoset poset{std::move(ambient), w, std::move(elements), {}, {}};
  for (PositionSet p : poset.elements) poset.dims.push_back(cardinality(p) - sys.length(w));
  poset.order = Poset::from_relation(poset.elements.size(), [&](int a, int b) {
    return (poset.elements[static_cast<std::size_t>(a)] & ~poset.elements[static_cast<std::size_t>(b)]) == 0;
  });
  return poset;
}

/// All P ⊆ Q with δ(P) = w under inclusion, each tagged with |P| - l(w).
inline StrataPoset strata_poset(const CoxeterSystem& sys, const Word& q, Element w) {
  sys.require_valid(q);
  detail::require_subset_scale(q);
  detail::require_contains(sys, q, w);
  const auto delta = subword_demazure_table(sys, q);
  std::vector<PositionSet> elements;
  for (std::size_t p = 0; p < delta.size(); ++p)
    if (delta[p] == w) elements.push_back(static_cast<PositionSet>(p));
  return make_strata_poset(sys, q, w, std::move(elements));
}

struct PurityReport {
  std::vector<PositionSet> maximal;
  std::vector<int> maximal_dims;  // aligned with `maximal`
  std::set<int> distinct_dims;
  bool pure = true;
};

inline PurityReport purity_report(const StrataPoset& poset) {
  PurityReport report;
  for (int idx : poset.order.maximal_elements()) {
    report.maximal.push_back(poset.elements[static_cast<std::size_t>(idx)]);
    report.maximal_dims.push_back(poset.dims[static_cast<std::size_t>(idx)]);
    report.distinct_dims.insert(poset.dims[static_cast<std::size_t>(idx)]);
  }
  report.pure = report.distinct_dims.size() <= 1;
  return report;
}

enum class WeakSide { Right, Left };

/// Whether the Bruhat lower interval of w coincides with its weak lower
/// interval on the given side (the hypothesis of the purity experiment).
inline bool weak_and_bruhat_lower_sets_agree(const CoxeterSystem& sys, Element w, WeakSide side = WeakSide::Right) {
  for (std::size_t id = 0; id < sys.size(); ++id) {
    Element u = sys.element(id);
    bool weak = side == WeakSide::Right ? right_weak_leq(sys, u, w) : left_weak_leq(sys, u, w);
    if (bruhat_leq(sys, u, w) != weak) return false;
  }
  return true;
}

}  // namespace tnnfibers
