#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tnnfibers;

namespace {

const CoxeterSystem& a3() {
  static const CoxeterSystem sys(named_coxeter_matrix("A3"));
  return sys;
}

/// Rightmost reduced subword: among all reduced subwords for w, the one whose
/// positions read from the right are lexicographically largest.
std::optional<PositionSet> brute_rightmost(const CoxeterSystem& sys, const Word& q, Element w) {
  std::optional<PositionSet> best;
  auto key = [](PositionSet p) {
    auto v = positions_of(p);
    std::reverse(v.begin(), v.end());
    return v;
  };
  for (PositionSet p = 0; p <= full_set(q.length()); ++p) {
    Word sub = q.subword(p);
    if (is_reduced(sys, sub) && product(sys, sub) == w && (!best || key(p) > key(*best))) best = p;
    if (p == full_set(q.length())) break;
  }
  return best;
}

}  // namespace

TEST(Demazure, Examples) {
  const auto& sys = a3();
  EXPECT_EQ(sys.name(demazure_product(sys, Word{1, 2, 1, 2})), "s1s2s1");
  EXPECT_EQ(demazure_product(sys, Word{1, 1}), sys.generator(1));
  EXPECT_EQ(demazure_product(sys, Word{}), sys.identity());
  EXPECT_EQ(demazure_product(sys, Word{1, 3, 2, 1, 3, 2}), sys.longest());
}

TEST(Demazure, AgreesWithPermutationZeroHeckeModel) {
  const auto& sys = a3();
  oracle::RandomRationals rnd(11);
  for (int trial = 0; trial < 500; ++trial) {
    Word q = rnd.word(3, rnd.uniform(0, 12));
    EXPECT_EQ(oracle::perm_of(4, sys.normal_form(demazure_product(sys, q))), oracle::demazure_perm(4, q));
  }
}

TEST(Demazure, SubsetTableMatchesDirectProducts) {
  const auto& sys = a3();
  Word q{1, 3, 2, 1, 3, 2, 1, 2};
  auto table = subword_demazure_table(sys, q);
  ASSERT_EQ(table.size(), 256u);
  for (std::size_t p = 0; p < table.size(); ++p) {
    EXPECT_EQ(table[p], demazure_product(sys, q.subword(static_cast<PositionSet>(p))));
    EXPECT_EQ(table[p], demazure_product(sys, q, static_cast<PositionSet>(p)));
  }
}

TEST(Demazure, Redundancy) {
  const auto& sys = a3();
  Word q{1, 2, 1, 2};
  EXPECT_TRUE(is_redundant(sys, q, 4));
  EXPECT_TRUE(is_redundant(sys, q, 1));
  EXPECT_FALSE(is_redundant(sys, Word{1, 2, 1, 2, 3}, 5));
  EXPECT_FALSE(is_redundant(sys, Word{1, 2, 1}, 2));
}

TEST(Demazure, DeletionPairsAndPartners) {
  const auto& sys = a3();
  Word q{1, 2, 2, 1, 2};
  EXPECT_TRUE(are_deletion_partners(sys, q, 1, 5));
  EXPECT_FALSE(is_deletion_pair(sys, q, 1, 5));
  EXPECT_TRUE(is_deletion_pair(sys, Word{1, 2, 1, 2}, 1, 4));
  EXPECT_TRUE(is_deletion_pair(sys, Word{1, 1}, 1, 2));
  EXPECT_EQ(deletion_partners(sys, Word{1, 1, 1}, 1), (std::vector<int>{2}));
  EXPECT_EQ(find_deletion_partner(sys, Word{1, 2, 1, 2}, 1), 4);
  EXPECT_FALSE(find_deletion_partner(sys, Word{1, 2, 3}, 1).has_value());
}

TEST(Demazure, DeletionPairsArePartners) {
  const auto& sys = a3();
  oracle::RandomRationals rnd(5);
  for (int trial = 0; trial < 300; ++trial) {
    Word q = rnd.word(3, rnd.uniform(2, 8));
    for (int j = 1; j <= q.length(); ++j)
      for (int k = j + 1; k <= q.length(); ++k)
        if (is_deletion_pair(sys, q, j, k)) EXPECT_TRUE(are_deletion_partners(sys, q, j, k));
  }
}

TEST(Demazure, ContainsMatchesSubsetSearch) {
  const auto& sys = a3();
  oracle::RandomRationals rnd(3);
  for (int trial = 0; trial < 80; ++trial) {
    Word q = rnd.word(3, rnd.uniform(0, 8));
    std::vector<bool> reach(sys.size(), false);
    for (PositionSet p = 0; p <= full_set(q.length()); ++p) {
      Word sub = q.subword(p);
      if (is_reduced(sys, sub)) reach[product(sys, sub).id] = true;
      if (p == full_set(q.length())) break;
    }
    for (std::size_t id = 0; id < sys.size(); ++id) EXPECT_EQ(contains(sys, q, sys.element(id)), reach[id]);
    // The Demazure product is the Bruhat-largest contained element.
    for (std::size_t id = 0; id < sys.size(); ++id)
      if (reach[id]) EXPECT_TRUE(bruhat_leq(sys, sys.element(id), demazure_product(sys, q)));
  }
}

TEST(Demazure, RightmostReducedSubwordMatchesBruteForce) {
  const auto& sys = a3();
  EXPECT_EQ(rightmost_reduced_subword(sys, Word{1, 2, 1, 2}, product(sys, Word{1, 2, 1})), to_position_set({2, 3, 4}));
  oracle::RandomRationals rnd(9);
  for (int trial = 0; trial < 200; ++trial) {
    Word q = rnd.word(3, rnd.uniform(0, 8));
    for (std::size_t id = 0; id < sys.size(); ++id) {
      Element w = sys.element(id);
      auto expected = brute_rightmost(sys, q, w);
      if (!expected) {
        EXPECT_THROW(rightmost_reduced_subword(sys, q, w), Error);
      } else {
        EXPECT_EQ(rightmost_reduced_subword(sys, q, w), *expected);
      }
    }
  }
}

TEST(Demazure, ComplementOfRightmostSubwordIsRedundantInSuffix) {
  const auto& sys = a3();
  oracle::RandomRationals rnd(21);
  for (int trial = 0; trial < 300; ++trial) {
    Word q = rnd.word(3, rnd.uniform(1, 9));
    PositionSet sc = rightmost_reduced_subword(sys, q, demazure_product(sys, q));
    for (int j = 1; j <= q.length(); ++j) {
      bool redundant = is_redundant(sys, q.slice(j, q.length()), 1);
      EXPECT_EQ(redundant, !has_position(sc, j)) << format_word(q) << " position " << j;
    }
  }
}

TEST(Redundancy, PrefixOrSuffixClaimFailsForMiddleLetters) {
  // Redundant in the whole word, yet both (1,2,1) halves around it are reduced.
  const CoxeterSystem a2(named_coxeter_matrix("A2"));
  const Word q{1, 2, 1, 2, 1};
  EXPECT_TRUE(is_redundant(a2, q, 3));
  EXPECT_FALSE(is_redundant(a2, q.slice(1, 3), 3));
  EXPECT_FALSE(is_redundant(a2, q.slice(3, 5), 1));

  const CoxeterSystem a3(named_coxeter_matrix("A3"));
  std::size_t counterexamples = 0;
  for (const Word& w : all_words(3, 6)) {
    for (int j = 2; j < w.length(); ++j) {
      if (!is_redundant(a3, w, j)) continue;
      if (!is_redundant(a3, w.slice(1, j), j) && !is_redundant(a3, w.slice(j, w.length()), 1)) ++counterexamples;
    }
  }
  EXPECT_GT(counterexamples, 0u);
}
