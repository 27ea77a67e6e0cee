#pragma once

// Finite Coxeter systems realized by full enumeration.
//
// A CoxeterSystem is built from a Coxeter matrix by coset enumeration over
// the trivial subgroup (Todd-Coxeter, HLT strategy) followed by a
// breadth-first relabelling, so that element ids follow the shortlex order
// of their normal forms: id 0 is the identity, and every element stores its
// shortlex-minimal reduced word. After construction the system is immutable;
// all queries are table lookups.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnnfibers/error.hpp"
#include "tnnfibers/word.hpp"

namespace tnnfibers {

struct Element {
  std::uint32_t id = 0;
  auto operator<=>(const Element&) const = default;
};

/// Symmetric table m(i,j) with m(i,i) = 1 and m(i,j) >= 2 otherwise.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Rows are 0-based copies of m; throws BadInput unless the table is a
  /// valid finite-entry Coxeter matrix.
  explicit CoxeterMatrix(std::vector<std::vector<int>> rows) : rank_(static_cast<int>(rows.size())) {
    if (rank_ < 1) throw Error(ErrorCode::BadInput, "Coxeter matrix must have rank >= 1");
    entries_.assign(static_cast<std::size_t>(rank_ * rank_), 0);
    for (int i = 0; i < rank_; ++i) {
      if (static_cast<int>(rows[i].size()) != rank_) {
        throw Error(ErrorCode::BadInput, "Coxeter matrix must be square");
      }
      for (int j = 0; j < rank_; ++j) entries_[i * rank_ + j] = rows[i][j];
    }
    for (int i = 0; i < rank_; ++i) {
      if (entries_[i * rank_ + i] != 1) throw Error(ErrorCode::BadInput, "diagonal entries must be 1");
      for (int j = 0; j < rank_; ++j) {
        if (entries_[i * rank_ + j] != entries_[j * rank_ + i]) {
          throw Error(ErrorCode::BadInput, "Coxeter matrix must be symmetric");
        }
        if (i != j && entries_[i * rank_ + j] < 2) {
          throw Error(ErrorCode::BadInput, "off-diagonal entries must be >= 2 (infinity is not accepted)");
        }
      }
    }
  }

  int rank() const { return rank_; }

  /// m(s_i, s_j) for 1-based generators.
  int m(Generator i, Generator j) const { return entries_[(i - 1) * rank_ + (j - 1)]; }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(rank_, std::vector<int>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) out[i][j] = entries_[i * rank_ + j];
    return out;
  }

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  int rank_ = 0;
  std::vector<int> entries_;
};

namespace detail {

inline CoxeterMatrix matrix_from_bonds(int rank, const std::vector<std::tuple<int, int, int>>& bonds) {
  std::vector<std::vector<int>> rows(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) rows[i][i] = 1;
  for (auto [i, j, m] : bonds) {
    rows[i - 1][j - 1] = m;
    rows[j - 1][i - 1] = m;
  }
  return CoxeterMatrix(std::move(rows));
}

}  // namespace detail

/// Named series: "A3", "B4", "D5", "E6".."E8", "F4", "H3", "H4", "I2:5".
/// B_n carries its 4-bond between generators n-1 and n; D_n attaches
/// generator n to n-2; E_n uses Bourbaki numbering (2 attached to 4).
inline CoxeterMatrix named_coxeter_matrix(std::string_view name) {
  auto fail = [&] { throw Error(ErrorCode::BadInput, "unknown Coxeter type '" + std::string(name) + "'"); };
  if (name.size() < 2) fail();
  char series = name[0];
  std::string rest(name.substr(1));
  if (series == 'I') {
    auto colon = rest.find(':');
    if (rest.substr(0, colon) != "2" || colon == std::string::npos) fail();
    int m = 0;
    try {
      m = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      fail();
    }
    if (m < 2) fail();
    return detail::matrix_from_bonds(2, {{1, 2, m}});
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(rest, &used);
    if (used != rest.size()) fail();
  } catch (const std::exception&) {
    fail();
  }
  std::vector<std::tuple<int, int, int>> bonds;
  switch (series) {
    case 'A':
      if (n < 1) fail();
      for (int i = 1; i < n; ++i) bonds.emplace_back(i, i + 1, 3);
      break;
    case 'B':
    case 'C':
      if (n < 2) fail();
      for (int i = 1; i + 1 < n; ++i) bonds.emplace_back(i, i + 1, 3);
      bonds.emplace_back(n - 1, n, 4);
      break;
    case 'D':
      if (n < 4) fail();
      for (int i = 1; i + 1 < n; ++i) bonds.emplace_back(i, i + 1, 3);
      bonds.emplace_back(n - 2, n, 3);
      break;
    case 'E':
      if (n < 6 || n > 8) fail();
      bonds.emplace_back(1, 3, 3);
      bonds.emplace_back(2, 4, 3);
      for (int i = 3; i < n; ++i) bonds.emplace_back(i, i + 1, 3);
      break;
    case 'F':
      if (n != 4) fail();
      bonds = {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}};
      break;
    case 'H':
      if (n != 3 && n != 4) fail();
      bonds.emplace_back(1, 2, 5);
      for (int i = 2; i < n; ++i) bonds.emplace_back(i, i + 1, 3);
      break;
    default:
      fail();
  }
  return detail::matrix_from_bonds(n, bonds);
}

inline constexpr std::size_t kDefaultSizeCap = 50000;

namespace detail {

/// HLT coset enumeration of a Coxeter presentation over the trivial subgroup.
/// Generators are involutions, so each column of the table is its own inverse.
class CosetEnumerator {
 public:
  CosetEnumerator(const CoxeterMatrix& matrix, std::size_t coset_limit)
      : rank_(matrix.rank()), limit_(coset_limit) {
    for (int i = 1; i <= rank_; ++i) {
      for (int j = i + 1; j <= rank_; ++j) {
        std::vector<int> rel;
        for (int k = 0; k < matrix.m(i, j); ++k) {
          rel.push_back(i - 1);
          rel.push_back(j - 1);
        }
        relators_.push_back(std::move(rel));
      }
    }
  }

  /// Runs to completion; returns the closed table indexed by live cosets
  /// (coset 0 first), or throws GroupTooLarge when the limit is reached.
  std::vector<std::vector<int>> run() {
    define_coset();
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& rel : relators_) {
        if (!alive(c)) break;
        scan_and_fill(c, rel);
      }
      if (!alive(c)) continue;
      for (int g = 0; g < rank_; ++g) {
        if (!alive(c)) break;
        if (entry(c, g) < 0) {
          int d = define_coset();
          set_entry(c, g, d);
        }
      }
    }
    std::vector<int> compact(parent_.size(), -1);
    int live = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (alive(static_cast<int>(c))) compact[c] = live++;
    std::vector<std::vector<int>> out(live, std::vector<int>(rank_));
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!alive(static_cast<int>(c))) continue;
      for (int g = 0; g < rank_; ++g) out[compact[c]][g] = compact[rep(entry(static_cast<int>(c), g))];
    }
    return out;
  }

 private:
  int entry(int c, int g) const { return table_[static_cast<std::size_t>(c) * rank_ + g]; }
  int& entry_ref(int c, int g) { return table_[static_cast<std::size_t>(c) * rank_ + g]; }
  void set_entry(int c, int g, int d) {
    entry_ref(c, g) = d;
    entry_ref(d, g) = c;
  }
  bool alive(int c) const { return parent_[c] == c; }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  int define_coset() {
    if (parent_.size() >= limit_) {
      throw Error(ErrorCode::GroupTooLarge, "coset enumeration exceeded " + std::to_string(limit_) +
                                                " cosets; the group is infinite or beyond the size cap");
    }
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.insert(table_.end(), static_cast<std::size_t>(rank_), -1);
    return c;
  }

  void scan_and_fill(int c, const std::vector<int>& rel) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(rel.size()) - 1;
    while (true) {
      while (i <= j && entry(f, rel[i]) >= 0) f = entry(f, rel[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, rel[j]) >= 0) b = entry(b, rel[j--]);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set_entry(f, rel[i], b);
        return;
      }
      int d = define_coset();
      set_entry(f, rel[i], d);
    }
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t k = 0; k < queue.size(); ++k) {
      int e = queue[k];
      for (int g = 0; g < rank_; ++g) {
        int f = entry(e, g);
        if (f < 0) continue;
        entry_ref(f, g) = -1;
        entry_ref(e, g) = -1;
        int e1 = rep(e), f1 = rep(f);
        if (entry(e1, g) >= 0) {
          merge(f1, entry(e1, g), queue);
        } else if (entry(f1, g) >= 0) {
          merge(e1, entry(f1, g), queue);
        } else {
          set_entry(e1, g, f1);
        }
      }
    }
  }

  int rank_;
  std::size_t limit_;
  std::vector<std::vector<int>> relators_;
  std::vector<int> table_;
  std::vector<int> parent_;
};

}  // namespace detail

class CoxeterSystem {
 public:
  /// Enumerates W. Throws GroupTooLarge if |W| exceeds size_cap (infinite
  /// groups hit the cap during enumeration).
  explicit CoxeterSystem(CoxeterMatrix matrix, std::size_t size_cap = kDefaultSizeCap)
      : matrix_(std::move(matrix)), size_cap_(size_cap) {
    build();
  }

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  std::size_t size() const { return length_.size(); }
  std::size_t size_cap() const { return size_cap_; }

  Element identity() const { return Element{0}; }
  Element generator(Generator s) const { return right_mul(identity(), s); }
  Element element(std::size_t id) const { return Element{static_cast<std::uint32_t>(id)}; }

  Element right_mul(Element w, Generator s) const {
    return Element{static_cast<std::uint32_t>(right_[w.id * rank() + (s - 1)])};
  }
  Element left_mul(Generator s, Element w) const {
    return Element{static_cast<std::uint32_t>(left_[w.id * rank() + (s - 1)])};
  }
  int length(Element w) const { return length_[w.id]; }
  const Word& normal_form(Element w) const { return normal_form_[w.id]; }
  Element inverse(Element w) const { return Element{static_cast<std::uint32_t>(inverse_[w.id])}; }
  Element longest() const { return Element{static_cast<std::uint32_t>(size() - 1)}; }

  bool is_right_descent(Element w, Generator s) const { return length(right_mul(w, s)) < length(w); }
  bool is_left_descent(Generator s, Element w) const { return length(left_mul(s, w)) < length(w); }

  bool valid_generator(Generator s) const { return s >= 1 && s <= rank(); }

  void require_valid(const Word& word) const {
    for (Generator s : word) {
      if (!valid_generator(s)) {
        throw Error(ErrorCode::BadInput, "letter " + std::to_string(s) + " outside [1," +
                                             std::to_string(rank()) + "]");
      }
    }
  }

  /// Element ordinarily represented by `word` ("e" for the identity), e.g. "s1s3s2".
  std::string name(Element w) const {
    if (length(w) == 0) return "e";
    std::string out;
    for (Generator s : normal_form(w)) out += "s" + std::to_string(s);
    return out;
  }

 private:
  void build() {
    std::size_t limit = std::max<std::size_t>(16 * size_cap_ + 1024, 4096);
    auto table = detail::CosetEnumerator(matrix_, limit).run();
    if (table.size() > size_cap_) {
      throw Error(ErrorCode::GroupTooLarge,
                  "|W| = " + std::to_string(table.size()) + " exceeds size cap " + std::to_string(size_cap_));
    }
    const int r = rank();
    const std::size_t n = table.size();
    // Breadth-first from the identity, generators ascending: the discovery
    // order is the shortlex order of normal forms.
    std::vector<int> new_id(n, -1), order;
    order.reserve(n);
    new_id[0] = 0;
    order.push_back(0);
    normal_form_.assign(n, Word{});
    length_.assign(n, 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      int old = order[k];
      for (int g = 0; g < r; ++g) {
        int nb = table[old][g];
        if (new_id[nb] >= 0) continue;
        new_id[nb] = static_cast<int>(order.size());
        order.push_back(nb);
        Word nf = normal_form_[k];
        nf.push_back(g + 1);
        normal_form_[new_id[nb]] = std::move(nf);
        length_[new_id[nb]] = length_[k] + 1;
      }
    }
    right_.assign(n * r, 0);
    for (std::size_t k = 0; k < n; ++k)
      for (int g = 0; g < r; ++g) right_[k * r + g] = new_id[table[order[k]][g]];
    auto fold = [&](std::size_t start, const Word& word) {
      std::size_t cur = start;
      for (Generator s : word) cur = static_cast<std::size_t>(right_[cur * r + (s - 1)]);
      return cur;
    };
    left_.assign(n * r, 0);
    inverse_.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      for (int g = 0; g < r; ++g) {
        std::size_t sg = static_cast<std::size_t>(right_[g]);  // s_g itself
        left_[k * r + g] = static_cast<int>(fold(sg, normal_form_[k]));
      }
      inverse_[k] = static_cast<int>(fold(0, normal_form_[k].reversed()));
    }
    std::size_t longest = n - 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (length_[k] >= length_[longest] && k != longest) {
        throw Error(ErrorCode::ValidationFailed, "shortlex enumeration did not end at the longest element");
      }
    }
  }

  CoxeterMatrix matrix_;
  std::size_t size_cap_;
  std::vector<int> right_, left_, length_, inverse_;
  std::vector<Word> normal_form_;
};

/// Ordinary group product, left to right.
inline Element product(const CoxeterSystem& sys, const Word& word) {
  Element w = sys.identity();
  for (Generator s : word) w = sys.right_mul(w, s);
  return w;
}

inline bool is_reduced(const CoxeterSystem& sys, const Word& word) {
  return sys.length(product(sys, word)) == word.length();
}

/// Smallest position j with product(word minus j) = w*s, where w = product(word).
inline int exchange_index(const CoxeterSystem& sys, const Word& reduced_word, Generator s) {
  if (!is_reduced(sys, reduced_word)) throw Error(ErrorCode::NotReduced, format_word(reduced_word));
  Element w = product(sys, reduced_word);
  Element ws = sys.right_mul(w, s);
  if (sys.length(ws) > sys.length(w)) {
    throw Error(ErrorCode::NotADescent, "s" + std::to_string(s) + " is not a right descent of " + sys.name(w));
  }
  for (int j = 1; j <= reduced_word.length(); ++j) {
    if (product(sys, reduced_word.without(j)) == ws) return j;
  }
  throw Error(ErrorCode::ValidationFailed, "exchange condition failed");
}

/// A braid move at `position`: the alternating run of length m(i,j) that
/// starts there is replaced by the opposite alternation. Short moves are
/// commutations (m = 2).
struct BraidMove {
  int position = 0;
  bool long_move = false;
  bool operator==(const BraidMove&) const = default;
};

/// Length of the braid run starting at `position` when one fits, else 0.
inline int braid_run_length(const CoxeterSystem& sys, const Word& word, int position) {
  if (position < 1 || position >= word.length()) return 0;
  Generator a = word.at(position), b = word.at(position + 1);
  if (a == b) return 0;
  int m = sys.matrix().m(a, b);
  if (position + m - 1 > word.length()) return 0;
  for (int k = 0; k < m; ++k) {
    if (word.at(position + k) != (k % 2 == 0 ? a : b)) return 0;
  }
  return m;
}

inline Word apply_braid_move(const CoxeterSystem& sys, const Word& word, const BraidMove& move) {
  int m = braid_run_length(sys, word, move.position);
  if (m == 0 || (m == 2) == move.long_move) {
    throw Error(ErrorCode::PatternMismatch, "no braid run at position " + std::to_string(move.position) +
                                                " of " + format_word(word));
  }
  Word out = word;
  Generator a = word.at(move.position), b = word.at(move.position + 1);
  for (int k = 0; k < m; ++k) out.letters()[move.position - 1 + k] = (k % 2 == 0 ? b : a);
  return out;
}

/// Shortest braid-move sequence from `from` to `to` (BFS over reduced words).
inline std::vector<BraidMove> braid_path(const CoxeterSystem& sys, const Word& from, const Word& to) {
  sys.require_valid(from);
  sys.require_valid(to);
  if (!is_reduced(sys, from)) throw Error(ErrorCode::NotReduced, format_word(from));
  if (!is_reduced(sys, to)) throw Error(ErrorCode::NotReduced, format_word(to));
  if (product(sys, from) != product(sys, to)) {
    throw Error(ErrorCode::NotSameElement, format_word(from) + " vs " + format_word(to));
  }
  if (from == to) return {};
  std::map<Word, std::pair<Word, BraidMove>> seen;
  seen.emplace(from, std::pair<Word, BraidMove>{Word{}, BraidMove{}});
  std::deque<Word> queue{from};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    for (int pos = 1; pos < cur.length(); ++pos) {
      int m = braid_run_length(sys, cur, pos);
      if (m == 0) continue;
      BraidMove move{pos, m > 2};
      Word next = apply_braid_move(sys, cur, move);
      if (seen.count(next)) continue;
      seen.emplace(next, std::pair<Word, BraidMove>{cur, move});
      if (next == to) {
        std::vector<BraidMove> path;
        Word back = next;
        while (back != from) {
          const auto& [prev, mv] = seen.at(back);
          path.push_back(mv);
          back = prev;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(std::move(next));
    }
  }
  throw Error(ErrorCode::ValidationFailed, "reduced words not braid-connected");
}

/// Bruhat order by the descent recursion: for a right descent s of w,
/// u <= w iff (us < u ? us <= ws : u <= ws).
inline bool bruhat_leq(const CoxeterSystem& sys, Element u, Element w) {
  while (true) {
    if (u == w) return true;
    if (sys.length(u) >= sys.length(w)) return false;
    if (sys.length(u) == 0) return true;
    Generator s = sys.normal_form(w).letters().back();
    Element ws = sys.right_mul(w, s);
    Element us = sys.right_mul(u, s);
    if (sys.length(us) < sys.length(u)) u = us;
    w = ws;
  }
}

/// Right weak order: u <= w iff l(u) + l(u^{-1} w) = l(w).
inline bool right_weak_leq(const CoxeterSystem& sys, Element u, Element w) {
  Element uinv_w = product(sys, sys.normal_form(sys.inverse(u)).concat(sys.normal_form(w)));
  return sys.length(u) + sys.length(uinv_w) == sys.length(w);
}

/// Left weak order: u <= w iff l(u) + l(w u^{-1}) = l(w).
inline bool left_weak_leq(const CoxeterSystem& sys, Element u, Element w) {
  Element w_uinv = product(sys, sys.normal_form(w).concat(sys.normal_form(sys.inverse(u))));
  return sys.length(u) + sys.length(w_uinv) == sys.length(w);
}

}  // namespace tnnfibers
