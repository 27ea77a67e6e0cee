#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace tnnfibers;

namespace {

const CoxeterSystem& a3() {
  static const CoxeterSystem sys(named_coxeter_matrix("A3"));
  return sys;
}

std::vector<Word> all_reduced_words(const CoxeterSystem& sys, Element w) {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int len = 0; len < sys.length(w); ++len) {
    std::vector<Word> next;
    for (const auto& u : frontier)
      for (Generator s = 1; s <= sys.rank(); ++s) {
        Word v = u;
        v.push_back(s);
        if (is_reduced(sys, v)) next.push_back(v);
      }
    frontier = std::move(next);
  }
  for (auto& u : frontier)
    if (product(sys, u) == w) out.push_back(u);
  return out;
}

}  // namespace

TEST(Word, ParseFormatAndPositionSets) {
  Word w = parse_word("1, 3,2");
  EXPECT_EQ(w, (Word{1, 3, 2}));
  EXPECT_EQ(format_word(w), "1,3,2");
  EXPECT_TRUE(parse_word("").empty());
  EXPECT_THROW(parse_word("1,,2"), Error);
  EXPECT_THROW(parse_word("a"), Error);
  EXPECT_EQ(w.subword(to_position_set({1, 3})), (Word{1, 2}));
  EXPECT_EQ(positions_of(to_position_set({4, 2})), (std::vector<int>{2, 4}));
  EXPECT_TRUE(position_set_less(to_position_set({3}), to_position_set({1, 2})));
  EXPECT_TRUE(position_set_less(to_position_set({1, 3}), to_position_set({2, 3})));
}

TEST(Coxeter, GroupOrders) {
  const std::map<std::string, std::size_t> orders{{"A1", 2},  {"A3", 24},  {"A4", 120},  {"B3", 48},   {"C3", 48},
                                                  {"D4", 192}, {"H3", 120}, {"F4", 1152}, {"I2:5", 10}, {"I2:6", 12},
                                                  {"B4", 384}, {"E6", 51840}};
  for (const auto& [name, order] : orders) {
    CoxeterSystem sys(named_coxeter_matrix(name), 60000);
    EXPECT_EQ(sys.size(), order) << name;
  }
}

TEST(Coxeter, LongestElementLengthIsNumberOfReflections) {
  EXPECT_EQ(a3().length(a3().longest()), 6);
  CoxeterSystem h3(named_coxeter_matrix("H3"));
  EXPECT_EQ(h3.length(h3.longest()), 15);
  CoxeterSystem i25(named_coxeter_matrix("I2:5"));
  EXPECT_EQ(i25.length(i25.longest()), 5);
}

TEST(Coxeter, InfiniteOrTooLargeGroupsAreRejected) {
  EXPECT_THROW(CoxeterSystem(named_coxeter_matrix("A5"), 100), Error);
  // Affine A~2: m = 3 on a triangle, infinite.
  try {
    CoxeterSystem sys(CoxeterMatrix({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}), 2000);
    FAIL() << "affine group enumerated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GroupTooLarge);
  }
}

TEST(Coxeter, MatrixValidation) {
  EXPECT_THROW(CoxeterMatrix({{1, 3}, {2, 1}}), Error);
  EXPECT_THROW(CoxeterMatrix({{1, 1}, {1, 1}}), Error);
  EXPECT_THROW(named_coxeter_matrix("Q3"), Error);
  EXPECT_THROW(named_coxeter_matrix("D3"), Error);
}

TEST(Coxeter, AgreesWithPermutationModel) {
  const auto& sys = a3();
  std::set<oracle::Perm> seen;
  for (std::size_t id = 0; id < sys.size(); ++id) {
    Element w = sys.element(id);
    oracle::Perm p = oracle::perm_of(4, sys.normal_form(w));
    EXPECT_TRUE(seen.insert(p).second);
    EXPECT_EQ(sys.length(w), oracle::inversions(p));
    for (Generator s = 1; s <= 3; ++s) {
      Word ws = sys.normal_form(w);
      ws.push_back(s);
      EXPECT_EQ(oracle::perm_of(4, sys.normal_form(sys.right_mul(w, s))), oracle::perm_of(4, ws));
      Word sw{s};
      EXPECT_EQ(oracle::perm_of(4, sys.normal_form(sys.left_mul(s, w))), oracle::perm_of(4, sw.concat(sys.normal_form(w))));
    }
    EXPECT_EQ(oracle::perm_of(4, sys.normal_form(w).concat(sys.normal_form(sys.inverse(w)))), oracle::identity_perm(4));
  }
}

TEST(Coxeter, ShortlexNormalForms) {
  const auto& sys = a3();
  for (std::size_t id = 1; id < sys.size(); ++id) {
    const Word& prev = sys.normal_form(sys.element(id - 1));
    const Word& cur = sys.normal_form(sys.element(id));
    EXPECT_TRUE(prev.length() < cur.length() || (prev.length() == cur.length() && prev < cur));
    for (const Word& r : all_reduced_words(sys, sys.element(id))) EXPECT_LE(cur, r);
  }
  EXPECT_EQ(sys.name(sys.identity()), "e");
  EXPECT_EQ(sys.name(product(sys, Word{2, 1, 2})), "s1s2s1");
}

TEST(Coxeter, BruhatMatchesTableauCriterion) {
  const auto& sys = a3();
  for (std::size_t a = 0; a < sys.size(); ++a)
    for (std::size_t b = 0; b < sys.size(); ++b) {
      Element u = sys.element(a), w = sys.element(b);
      EXPECT_EQ(bruhat_leq(sys, u, w), oracle::bruhat_perm(oracle::perm_of(4, sys.normal_form(u)), oracle::perm_of(4, sys.normal_form(w))));
    }
}

TEST(Coxeter, BruhatMatchesSubwordPropertyInH3) {
  CoxeterSystem sys(named_coxeter_matrix("H3"));
  oracle::RandomRationals rnd(7);
  for (int trial = 0; trial < 300; ++trial) {
    Element u = sys.element(static_cast<std::size_t>(rnd.uniform(0, 119)));
    Element w = sys.element(static_cast<std::size_t>(rnd.uniform(0, 119)));
    const Word& nf = sys.normal_form(w);
    bool subword = false;
    for (PositionSet p = 0; p <= full_set(nf.length()) && !subword; ++p) {
      Word sub = nf.subword(p);
      subword = is_reduced(sys, sub) && product(sys, sub) == u;
      if (p == full_set(nf.length())) break;
    }
    EXPECT_EQ(bruhat_leq(sys, u, w), subword);
  }
}

TEST(Coxeter, WeakOrders) {
  const auto& sys = a3();
  Element w = product(sys, Word{1, 3, 2});
  EXPECT_TRUE(right_weak_leq(sys, product(sys, Word{1, 3}), w));
  EXPECT_FALSE(right_weak_leq(sys, product(sys, Word{2}), w));
  EXPECT_TRUE(left_weak_leq(sys, product(sys, Word{2}), w));
  EXPECT_TRUE(bruhat_leq(sys, product(sys, Word{2}), w));
}

TEST(Coxeter, ExchangeCondition) {
  const auto& sys = a3();
  Word q{1, 2, 1};
  int j = exchange_index(sys, q, 2);
  EXPECT_EQ(product(sys, q.without(j)), sys.right_mul(product(sys, q), 2));
  EXPECT_THROW(exchange_index(sys, Word{1, 2}, 1), Error);
  EXPECT_THROW(exchange_index(sys, Word{1, 1}, 1), Error);
}

TEST(Coxeter, BraidPathsConnectAllReducedWords) {
  const auto& sys = a3();
  for (Element w : {sys.longest(), product(sys, Word{1, 3, 2, 1}), product(sys, Word{2, 1, 3, 2})}) {
    auto words = all_reduced_words(sys, w);
    for (const auto& target : words) {
      Word cur = words.front();
      for (const auto& m : braid_path(sys, words.front(), target)) cur = apply_braid_move(sys, cur, m);
      EXPECT_EQ(cur, target);
    }
  }
  EXPECT_EQ(all_reduced_words(sys, sys.longest()).size(), 16u);
  try {
    braid_path(sys, Word{1, 2}, Word{2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSameElement);
  }
  try {
    braid_path(sys, Word{1, 1}, Word{2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReduced);
  }
}

TEST(Coxeter, BraidPathInB3UsesLongMove) {
  CoxeterSystem b3(named_coxeter_matrix("B3"));
  auto path = braid_path(b3, Word{2, 3, 2, 3}, Word{3, 2, 3, 2});
  ASSERT_EQ(path.size(), 1u);
  EXPECT_TRUE(path[0].long_move);
  EXPECT_EQ(braid_run_length(b3, Word{2, 3, 2, 3}, 1), 4);
}
