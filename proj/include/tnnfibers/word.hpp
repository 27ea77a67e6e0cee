#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "tnnfibers/error.hpp"

namespace tnnfibers {

/// Simple reflection index, 1-based.
using Generator = int;

/// A set of word positions. Bit k stands for position k+1, so words handled
/// through position sets are limited to 32 letters.
using PositionSet = std::uint32_t;

inline constexpr int kMaxPositionSetWord = 32;

inline PositionSet full_set(int length) {
  return length >= 32 ? ~PositionSet{0} : ((PositionSet{1} << length) - 1);
}

inline PositionSet singleton(int position) { return PositionSet{1} << (position - 1); }

inline bool has_position(PositionSet set, int position) {
  return (set >> (position - 1)) & 1U;
}

inline int cardinality(PositionSet set) { return std::popcount(set); }

/// Sorted 1-based positions of a set.
inline std::vector<int> positions_of(PositionSet set) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(set)));
  while (set != 0) {
    out.push_back(std::countr_zero(set) + 1);
    set &= set - 1;
  }
  return out;
}

inline PositionSet to_position_set(const std::vector<int>& positions) {
  PositionSet set = 0;
  for (int p : positions) {
    if (p < 1 || p > kMaxPositionSetWord) {
      throw Error(ErrorCode::BadInput, "position out of range: " + std::to_string(p));
    }
    set |= singleton(p);
  }
  return set;
}

/// Orders position sets by size, then lexicographically by sorted positions.
inline bool position_set_less(PositionSet a, PositionSet b) {
  int ca = cardinality(a), cb = cardinality(b);
  if (ca != cb) return ca < cb;
  return positions_of(a) < positions_of(b);
}

/// A finite sequence of generator indices. Subwords are addressed through
/// position sets into a parent word, so they keep their embedding.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Generator> letters) : letters_(letters) {}
  explicit Word(std::vector<Generator> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  /// 0-based access.
  Generator operator[](std::size_t index) const { return letters_[index]; }
  /// 1-based access by position.
  Generator at(int position) const { return letters_.at(static_cast<std::size_t>(position - 1)); }

  const std::vector<Generator>& letters() const { return letters_; }
  std::vector<Generator>& letters() { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Generator g) { letters_.push_back(g); }

  /// Letters at the positions of `set`, in order.
  Word subword(PositionSet set) const {
    Word out;
    for (int p : positions_of(set)) out.push_back(at(p));
    return out;
  }

  /// Positions `from`..`to` inclusive (1-based); empty when from > to.
  Word slice(int from, int to) const {
    Word out;
    for (int p = from; p <= to; ++p) out.push_back(at(p));
    return out;
  }

  Word without(int position) const {
    Word out = *this;
    out.letters_.erase(out.letters_.begin() + (position - 1));
    return out;
  }

  Word reversed() const { return Word(std::vector<Generator>(letters_.rbegin(), letters_.rend())); }

  Word concat(const Word& other) const {
    Word out = *this;
    out.letters_.insert(out.letters_.end(), other.letters_.begin(), other.letters_.end());
    return out;
  }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Generator> letters_;
};

/// "1,3,2" -> (1,3,2). Whitespace around entries is ignored; "" is the empty word.
inline Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_space();
  if (i == text.size()) return out;
  while (true) {
    skip_space();
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (start == i) throw Error(ErrorCode::BadInput, "malformed word: '" + std::string(text) + "'");
    out.push_back(std::stoi(std::string(text.substr(start, i - start))));
    skip_space();
    if (i == text.size()) break;
    if (text[i] != ',') throw Error(ErrorCode::BadInput, "malformed word: '" + std::string(text) + "'");
    ++i;
  }
  return out;
}

inline std::string format_word(const Word& word) {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(word[k]);
  }
  return out;
}

}  // namespace tnnfibers
