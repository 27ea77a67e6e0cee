#pragma once

// Demazure (0-Hecke) products and the redundancy / deletion combinatorics.

#include <bit>
#include <optional>
#include <vector>

#include "tnnfibers/coxeter.hpp"

namespace tnnfibers {

/// delta(w, s): ws when that is longer, otherwise w.
inline Element demazure_step(const CoxeterSystem& sys, Element w, Generator s) {
  Element ws = sys.right_mul(w, s);
  return sys.length(ws) > sys.length(w) ? ws : w;
}

inline Element demazure_product(const CoxeterSystem& sys, const Word& word) {
  Element w = sys.identity();
  for (Generator s : word) w = demazure_step(sys, w, s);
  return w;
}

inline Element demazure_product(const CoxeterSystem& sys, const Word& word, PositionSet subword) {
  Element w = sys.identity();
  while (subword != 0) {
    int k = std::countr_zero(subword);
    w = demazure_step(sys, w, word[static_cast<std::size_t>(k)]);
    subword &= subword - 1;
  }
  return w;
}

/// Demazure product of every subword, indexed by position set. Each entry
/// extends the entry without its highest position by one step.
inline std::vector<Element> subword_demazure_table(const CoxeterSystem& sys, const Word& word) {
  if (word.length() > 26) throw Error(ErrorCode::TooLarge, "subset enumeration limited to 26 letters");
  std::size_t count = std::size_t{1} << word.size();
  std::vector<Element> table(count, sys.identity());
  for (std::size_t set = 1; set < count; ++set) {
    int top = std::bit_width(set) - 1;
    table[set] = demazure_step(sys, table[set & ~(std::size_t{1} << top)], word[static_cast<std::size_t>(top)]);
  }
  return table;
}

/// Letter j is redundant when deleting it leaves the Demazure product unchanged.
inline bool is_redundant(const CoxeterSystem& sys, const Word& word, int j) {
  if (j < 1 || j > word.length()) throw Error(ErrorCode::BadInput, "position out of range");
  return demazure_product(sys, word.without(j)) == demazure_product(sys, word);
}

/// word[j..k-1] and word[j+1..k] are reduced words for one element while
/// word[j..k] is not reduced.
inline bool is_deletion_pair(const CoxeterSystem& sys, const Word& word, int j, int k) {
  if (j < 1 || k > word.length() || j >= k) throw Error(ErrorCode::BadInput, "need 1 <= j < k <= |word|");
  Word left = word.slice(j, k - 1), right = word.slice(j + 1, k);
  return is_reduced(sys, left) && is_reduced(sys, right) && product(sys, left) == product(sys, right) &&
         !is_reduced(sys, word.slice(j, k));
}

/// delta(word[j..k]) = delta(word[j..k-1]) = delta(word[j+1..k]) != delta(word[j+1..k-1]).
inline bool are_deletion_partners(const CoxeterSystem& sys, const Word& word, int j, int k) {
  if (j < 1 || k > word.length() || j >= k) throw Error(ErrorCode::BadInput, "need 1 <= j < k <= |word|");
  Element full = demazure_product(sys, word.slice(j, k));
  return demazure_product(sys, word.slice(j, k - 1)) == full &&
         demazure_product(sys, word.slice(j + 1, k)) == full &&
         demazure_product(sys, word.slice(j + 1, k - 1)) != full;
}

/// All k > j that are deletion partners of j, ascending.
inline std::vector<int> deletion_partners(const CoxeterSystem& sys, const Word& word, int j) {
  std::vector<int> out;
  for (int k = j + 1; k <= word.length(); ++k)
    if (are_deletion_partners(sys, word, j, k)) out.push_back(k);
  return out;
}

/// Smallest deletion partner of j to its right.
inline std::optional<int> find_deletion_partner(const CoxeterSystem& sys, const Word& word, int j) {
  for (int k = j + 1; k <= word.length(); ++k)
    if (are_deletion_partners(sys, word, j, k)) return k;
  return std::nullopt;
}

/// Bitset over the elements of a CoxeterSystem.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_((universe + 63) / 64, 0) {}

  bool test(Element w) const { return (bits_[w.id >> 6] >> (w.id & 63)) & 1U; }
  void set(Element w) { bits_[w.id >> 6] |= std::uint64_t{1} << (w.id & 63); }
  bool operator==(const ElementSet&) const = default;

 private:
  std::vector<std::uint64_t> bits_;
};

/// Elements represented by some reduced subword of `word`: start from {e}
/// and, letter by letter, add us for each reached u with l(us) > l(u).
inline ElementSet reduced_subword_products(const CoxeterSystem& sys, const Word& word) {
  std::vector<Element> reached{sys.identity()};
  ElementSet set(sys.size());
  set.set(sys.identity());
  for (Generator s : word) {
    std::size_t count = reached.size();
    for (std::size_t k = 0; k < count; ++k) {
      Element us = sys.right_mul(reached[k], s);
      if (sys.length(us) > sys.length(reached[k]) && !set.test(us)) {
        set.set(us);
        reached.push_back(us);
      }
    }
  }
  return set;
}

/// Whether some subword of `word` is a reduced word for w.
inline bool contains(const CoxeterSystem& sys, const Word& word, Element w) {
  sys.require_valid(word);
  return reduced_subword_products(sys, word).test(w);
}

/// Positions of the rightmost subword of `word` that is a reduced word for
/// w (this is S^C; its complement is S). Built right to left: a position is
/// taken when its letter is a right descent of what remains to be spelled
/// and the prefix before it still contains the remainder.
inline PositionSet rightmost_reduced_subword(const CoxeterSystem& sys, const Word& word, Element w) {
  if (word.length() > kMaxPositionSetWord) throw Error(ErrorCode::TooLarge, "word longer than 32 letters");
  std::vector<ElementSet> prefix;
  prefix.reserve(word.size() + 1);
  for (int k = 0; k <= word.length(); ++k) prefix.push_back(reduced_subword_products(sys, word.slice(1, k)));
  if (!prefix.back().test(w)) {
    throw Error(ErrorCode::NotContained, format_word(word) + " does not contain " + sys.name(w));
  }
  PositionSet chosen = 0;
  Element remaining = w;
  for (int j = word.length(); j >= 1 && sys.length(remaining) > 0; --j) {
    Generator s = word.at(j);
    Element rs = sys.right_mul(remaining, s);
    if (sys.length(rs) < sys.length(remaining) && prefix[static_cast<std::size_t>(j - 1)].test(rs)) {
      chosen |= singleton(j);
      remaining = rs;
    }
  }
  return chosen;
}

}  // namespace tnnfibers
