#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tnnfibers;

namespace {

Poset boolean_lattice(int n) {
  return Poset::from_relation(std::size_t{1} << n, [](int a, int b) { return (a & ~b) == 0; });
}

Poset chain(int n) {
  return Poset::from_relation(static_cast<std::size_t>(n), [](int a, int b) { return a <= b; });
}

}  // namespace

TEST(Posets, RejectsNonPartialOrders) {
  EXPECT_THROW(Poset::from_relation(2, [](int, int) { return true; }), Error);
  // 0 <= 1 <= 2 without 0 <= 2.
  EXPECT_THROW(Poset::from_relation(3, [](int a, int b) { return b == a + 1; }), Error);
}

TEST(Posets, CoversAndExtremes) {
  Poset b2 = boolean_lattice(2);
  EXPECT_EQ(b2.covers(), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(b2.minimal_elements(), std::vector<int>{0});
  EXPECT_EQ(b2.maximal_elements(), std::vector<int>{3});
  EXPECT_EQ(b2.open_interval(0, 3), (std::vector<int>{1, 2}));
  Poset with = chain(2).with_bottom();
  EXPECT_EQ(with.size(), 3u);
  EXPECT_TRUE(with.less(0, 1));
  EXPECT_TRUE(with.less(1, 2));
}

TEST(Posets, GradedThinAndCw) {
  Poset b3 = boolean_lattice(3);
  EXPECT_TRUE(is_graded(b3));
  EXPECT_TRUE(is_thin(b3));
  auto report = check_cw_poset(b3, order_complex_is_homology_sphere);
  EXPECT_TRUE(report.cw);
  EXPECT_FALSE(is_thin(chain(3)));
  EXPECT_FALSE(check_cw_poset(chain(3), order_complex_is_homology_sphere).cw);
  // 0 < 1 < 2 < 4 and 0 < 3 < 4: maximal chains of different lengths.
  Poset skew = Poset::from_relation(5, [](int a, int b) {
    if (a == b || a == 0 || b == 4) return true;
    return a == 1 && b == 2;
  });
  EXPECT_FALSE(is_graded(skew));
}

TEST(Posets, IsomorphismFindsWitness) {
  Poset b3 = boolean_lattice(3);
  std::vector<int> relabel{5, 2, 7, 0, 4, 1, 3, 6};
  std::vector<int> inverse(8);
  for (int k = 0; k < 8; ++k) inverse[relabel[k]] = k;
  Poset shuffled = Poset::from_relation(8, [&](int a, int b) { return b3.leq(inverse[a], inverse[b]); });
  auto witness = poset_isomorphism(b3, shuffled);
  ASSERT_TRUE(witness.has_value());
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) EXPECT_EQ(b3.leq(a, b), shuffled.leq((*witness)[a], (*witness)[b]));
  EXPECT_FALSE(poset_isomorphic(chain(4), boolean_lattice(2)));
  EXPECT_FALSE(poset_isomorphic(chain(3), chain(4)));
}

TEST(Posets, RankFunctionAllowsUnequalMaximalRanks) {
  Poset v = Poset::from_relation(4, [](int a, int b) { return a == b || (a == 0 && b != 0) || (a == 1 && b == 2); });
  auto rank = rank_function(v);
  ASSERT_TRUE(rank.has_value());
  EXPECT_EQ(*rank, (std::vector<int>{0, 1, 2, 1}));
}
