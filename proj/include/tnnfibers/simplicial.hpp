#pragma once

// Abstract simplicial complexes given by facets, and order complexes of posets.

#include <algorithm>
#include <vector>

#include "tnnfibers/posets.hpp"

namespace tnnfibers {

/// Sorted vertex indices.
using Simplex = std::vector<int>;

/// faces[k + 1] holds the k-dimensional faces (k >= -1), each list sorted.
using FaceList = std::vector<std::vector<Simplex>>;

struct SimplicialComplex {
  std::vector<int> vertex_labels;
  std::vector<Simplex> facets;  // sorted, no facet inside another

  /// Keeps only inclusion-maximal faces and sorts them. An input holding
  /// just the empty face yields the complex {∅}; no faces at all is the void
  /// complex.
  static SimplicialComplex from_faces(std::vector<int> labels, std::vector<Simplex> faces) {
    for (auto& f : faces) std::sort(f.begin(), f.end());
    std::sort(faces.begin(), faces.end(), [](const Simplex& a, const Simplex& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Simplex> facets;
    for (const auto& f : faces) {
      bool covered = std::any_of(facets.begin(), facets.end(), [&](const Simplex& g) {
        return std::includes(g.begin(), g.end(), f.begin(), f.end());
      });
      if (!covered) facets.push_back(f);
    }
    std::sort(facets.begin(), facets.end());
    return SimplicialComplex{std::move(labels), std::move(facets)};
  }

  bool is_void() const { return facets.empty(); }
  bool only_empty_face() const { return facets.size() == 1 && facets.front().empty(); }

  int dimension() const {
    int d = -1;
    for (const auto& f : facets) d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
  }
};

inline FaceList all_faces(const SimplicialComplex& complex) {
  FaceList faces(static_cast<std::size_t>(complex.dimension() + 2));
  for (const auto& facet : complex.facets) {
    const std::size_t k = facet.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Simplex face;
      for (std::size_t b = 0; b < k; ++b)
        if ((mask >> b) & 1U) face.push_back(facet[b]);
      faces[face.size()].push_back(std::move(face));
    }
  }
  for (auto& level : faces) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  return faces;
}

/// Chains of the poset, i.e. the faces of its order complex, grouped by
/// dimension. The empty chain is included.
inline FaceList chain_faces(const Poset& poset) {
  FaceList faces(1, std::vector<Simplex>{Simplex{}});
  const std::vector<int> order = poset.linear_extension();
  std::vector<int> chain;
  auto visit = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t k = from; k < order.size(); ++k) {
      int x = order[k];
      if (!chain.empty() && !poset.less(chain.back(), x)) continue;
      chain.push_back(x);
      if (faces.size() < chain.size() + 1) faces.resize(chain.size() + 1);
      Simplex face = chain;
      std::sort(face.begin(), face.end());
      faces[chain.size()].push_back(std::move(face));
      self(self, k + 1);
      chain.pop_back();
    }
  };
  visit(visit, 0);
  for (auto& level : faces) std::sort(level.begin(), level.end());
  return faces;
}

/// Order complex: vertices are the poset elements, facets the maximal chains.
inline SimplicialComplex order_complex(const Poset& poset) {
  std::vector<int> labels(poset.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = static_cast<int>(k);
  std::vector<Simplex> maximal;
  const std::vector<int> order = poset.linear_extension();
  std::vector<int> chain;
  auto extend = [&](auto&& self) -> void {
    bool extended = false;
    for (int x : order) {
      if (!chain.empty() && !poset.less(chain.back(), x)) continue;
      if (chain.empty() && !poset.lower_covers(x).empty()) continue;
      if (!chain.empty()) {
        const auto& below = poset.lower_covers(x);
        if (std::find(below.begin(), below.end(), chain.back()) == below.end()) continue;
      }
      extended = true;
      chain.push_back(x);
      self(self);
      chain.pop_back();
    }
    if (!extended) {
      Simplex face = chain;
      std::sort(face.begin(), face.end());
      maximal.push_back(std::move(face));
    }
  };
  extend(extend);
  return SimplicialComplex::from_faces(std::move(labels), std::move(maximal));
}

/// Unreduced Euler characteristic: alternating count of nonempty faces.
inline long euler_characteristic(const FaceList& faces) {
  long chi = 0;
  for (std::size_t k = 1; k < faces.size(); ++k) chi += (k % 2 == 1 ? 1 : -1) * static_cast<long>(faces[k].size());
  return chi;
}

}  // namespace tnnfibers
