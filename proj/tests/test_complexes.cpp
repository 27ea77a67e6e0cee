#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tnnfibers;

namespace {

const CoxeterSystem& a3() {
  static const CoxeterSystem sys(named_coxeter_matrix("A3"));
  return sys;
}

}  // namespace

TEST(Complexes, NonPureStrataPoset) {
  const auto& sys = a3();
  Word q{1, 3, 2, 1, 3, 2};
  StrataPoset poset = strata_poset(sys, q, product(sys, Word{1, 3, 2}));
  std::map<int, int> counts;
  for (int d : poset.dims) ++counts[d];
  EXPECT_EQ(counts, (std::map<int, int>{{0, 5}, {1, 5}, {2, 1}}));
  auto purity = purity_report(poset);
  EXPECT_FALSE(purity.pure);
  std::vector<int> dims = purity.maximal_dims;
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 2}));
  EXPECT_EQ(poset.elements.front(), to_position_set({1, 2, 3}));
  EXPECT_TRUE(reduced_homology(chain_faces(poset.order)).acyclic());
  EXPECT_FALSE(poset.has_top());
}

TEST(Complexes, IntervalFiber) {
  const auto& sys = a3();
  StrataPoset poset = strata_poset(sys, Word{1, 2, 1, 2}, product(sys, Word{1, 2, 1}));
  EXPECT_EQ(poset.elements, (std::vector<PositionSet>{to_position_set({1, 2, 3}), to_position_set({2, 3, 4}),
                                                      to_position_set({1, 2, 3, 4})}));
  EXPECT_TRUE(poset.has_top());
}

TEST(Complexes, SubwordComplexBallAndSphere) {
  const auto& sys = a3();
  // δ(1,2,1,2) = s1s2s1 != s1s2: a ball.
  auto ball = subword_complex(sys, Word{1, 2, 1, 2}, product(sys, Word{1, 2}));
  EXPECT_TRUE(verdict(ball, 1, VerdictMode::Ball));
  // δ(1,2,1,2) = s1s2s1: a 0-sphere.
  auto sphere = subword_complex(sys, Word{1, 2, 1, 2}, product(sys, Word{1, 2, 1}));
  EXPECT_TRUE(verdict(sphere, 0, VerdictMode::Sphere));
  auto reduced = subword_complex(sys, Word{1, 2, 1}, product(sys, Word{1, 2, 1}));
  EXPECT_TRUE(reduced.only_empty_face());
  EXPECT_THROW(subword_complex(sys, Word{1, 2}, product(sys, Word{2, 1})), Error);
}

TEST(Complexes, FacetsAreComplementsOfReducedSubwords) {
  const auto& sys = a3();
  oracle::RandomRationals rnd(13);
  for (int trial = 0; trial < 60; ++trial) {
    Word q = rnd.word(3, rnd.uniform(1, 7));
    for (std::size_t id = 0; id < sys.size(); ++id) {
      Element w = sys.element(id);
      if (!contains(sys, q, w)) continue;
      auto c = subword_complex(sys, q, w);
      auto faces = all_faces(c);
      std::size_t count = 0;
      for (const auto& level : faces) count += level.size();
      std::size_t brute = 0;
      for (PositionSet r = 0; r <= full_set(q.length()); ++r) {
        brute += is_subword_complex_face(sys, q, w, r);
        if (r == full_set(q.length())) break;
      }
      EXPECT_EQ(count, brute);
      // Interior faces are exactly the R with δ(Q \ R) = w.
      for (PositionSet r : interior_faces(sys, q, w)) {
        EXPECT_EQ(demazure_product(sys, q.subword(full_set(q.length()) & ~r)), w);
        EXPECT_TRUE(is_subword_complex_face(sys, q, w, r));
      }
    }
  }
}

TEST(Complexes, StrataPosetIsThinAndGradedWithBottom) {
  const auto& sys = a3();
  Word q{1, 2, 1, 2, 1};
  StrataPoset poset = strata_poset(sys, q, product(sys, Word{1, 2, 1}));
  Poset with_bottom = poset.order.with_bottom();
  auto report = check_cw_poset(with_bottom, order_complex_is_homology_sphere);
  EXPECT_TRUE(report.has_bottom);
  EXPECT_TRUE(report.graded);
  EXPECT_TRUE(report.cw);
}

TEST(Complexes, WeakAndBruhatLowerSets) {
  const auto& sys = a3();
  EXPECT_TRUE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1})));
  EXPECT_TRUE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1, 3})));
  // s2 is below s1s2 in Bruhat order but is not a prefix; s1 is not a suffix.
  EXPECT_FALSE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1, 2})));
  EXPECT_FALSE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1, 2}), WeakSide::Left));
  EXPECT_FALSE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1, 3, 2})));
  EXPECT_FALSE(weak_and_bruhat_lower_sets_agree(sys, product(sys, Word{1, 3, 2}), WeakSide::Left));
  EXPECT_TRUE(weak_and_bruhat_lower_sets_agree(sys, sys.longest()));
  EXPECT_TRUE(weak_and_bruhat_lower_sets_agree(sys, sys.longest(), WeakSide::Left));
}

TEST(Complexes, SizeCap) {
  const auto& sys = a3();
  Word long_word;
  for (int k = 0; k < 23; ++k) long_word.push_back(1 + k % 3);
  EXPECT_THROW(strata_poset(sys, long_word, sys.longest()), Error);
}
