#pragma once

// Type-A totally nonnegative unitriangular matrices over exact rationals.
//
// x_i(t) = I + t E_{i,i+1}. The image of f_Q(t) = x_{i_1}(t_1)...x_{i_d}(t_d)
// on positive parameters is the cell U+(δ(Q)); cells are identified by
// repeatedly extracting a Chevalley factor on the left.
//
// Minors are computed on a row-scaled integer copy of the matrix (row r is
// multiplied by the lcm of its denominators), which keeps every minor in
// GMP integers; ratios are corrected by the scale factors.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnnfibers/coxeter.hpp"
#include "tnnfibers/error.hpp"
#include "tnnfibers/word.hpp"

namespace tnnfibers {

using Rational = mpq_class;

/// "p/q" or "p" -> canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
  auto valid_int = [](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    return part.size() > start &&
           std::all_of(part.begin() + static_cast<long>(start), part.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::BadInput, "malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num = num.substr(1);
  mpz_class d(den);
  if (d == 0) throw Error(ErrorCode::BadInput, "zero denominator in '" + std::string(text) + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

/// Canonical "p/q", or "p" for integers.
inline std::string format_rational(Rational r) {
  r.canonicalize();
  return r.get_str();
}

inline std::vector<Rational> parse_rationals(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class UnitriangularMatrix {
 public:
  explicit UnitriangularMatrix(int n = 1) : n_(n), entries_(static_cast<std::size_t>(n * n), 0) {
    if (n < 1) throw Error(ErrorCode::BadInput, "matrix size must be >= 1");
    for (int k = 0; k < n; ++k) entries_[static_cast<std::size_t>(k * n + k)] = 1;
  }

  /// Throws BadInput unless `rows` is square, upper unitriangular.
  static UnitriangularMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    UnitriangularMatrix m(static_cast<int>(rows.size()));
    for (int r = 0; r < m.n_; ++r) {
      if (static_cast<int>(rows[r].size()) != m.n_) throw Error(ErrorCode::BadInput, "matrix must be square");
      for (int c = 0; c < m.n_; ++c) {
        const Rational& v = rows[r][c];
        if ((c < r && v != 0) || (c == r && v != 1)) {
          throw Error(ErrorCode::BadInput, "matrix must be upper unitriangular");
        }
        m.entries_[static_cast<std::size_t>(r * m.n_ + c)] = v;
      }
    }
    return m;
  }

  int size() const { return n_; }

  /// 0-based entry.
  const Rational& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * n_ + c)]; }

  /// Entry (i, i+1) for a 1-based generator i.
  const Rational& superdiagonal(Generator i) const { return (*this)(i - 1, i); }

  Rational superdiagonal_sum() const {
    Rational s = 0;
    for (int i = 1; i < n_; ++i) s += superdiagonal(i);
    return s;
  }

  /// this <- x_i(t) * this (row i += t * row i+1).
  void left_multiply(Generator i, const Rational& t) {
    check_generator(i);
    if (t == 0) return;
    for (int c = i; c < n_; ++c) at(i - 1, c) += t * (*this)(i, c);
  }

  /// this <- this * x_i(t) (column i+1 += t * column i).
  void right_multiply(Generator i, const Rational& t) {
    check_generator(i);
    if (t == 0) return;
    for (int r = 0; r < i; ++r) at(r, i) += t * (*this)(r, i - 1);
  }

  /// The anti-automorphism M -> J M^T J: sends x_i(t) to x_{n-i}(t) and
  /// reverses products. Preserves total nonnegativity.
  UnitriangularMatrix flipped() const {
    UnitriangularMatrix out(n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) out.at(r, c) = (*this)(n_ - 1 - c, n_ - 1 - r);
    return out;
  }

  bool is_identity() const { return *this == UnitriangularMatrix(n_); }

  std::vector<std::vector<Rational>> rows() const {
    std::vector<std::vector<Rational>> out(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) out[static_cast<std::size_t>(r)].push_back((*this)(r, c));
    return out;
  }

  bool operator==(const UnitriangularMatrix& other) const { return n_ == other.n_ && entries_ == other.entries_; }

 private:
  Rational& at(int r, int c) { return entries_[static_cast<std::size_t>(r * n_ + c)]; }
  void check_generator(Generator i) const {
    if (i < 1 || i >= n_) {
      throw Error(ErrorCode::DimensionMismatch, "letter " + std::to_string(i) + " does not fit n = " + std::to_string(n_));
    }
  }

  int n_;
  std::vector<Rational> entries_;
};

inline constexpr int kMaxMinorSize = 7;

namespace detail {

/// All square minors of a row-scaled integer copy of an n x n matrix.
class MinorTable {
 public:
  explicit MinorTable(const UnitriangularMatrix& m) : n_(m.size()) {
    if (n_ > kMaxMinorSize) throw Error(ErrorCode::TooLarge, "minor enumeration is limited to n <= 7");
    scale_.resize(static_cast<std::size_t>(n_));
    std::vector<mpz_class> b(static_cast<std::size_t>(n_ * n_));
    for (int r = 0; r < n_; ++r) {
      mpz_class l = 1;
      for (int c = 0; c < n_; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
      scale_[static_cast<std::size_t>(r)] = l;
      for (int c = 0; c < n_; ++c) {
        b[static_cast<std::size_t>(r * n_ + c)] = m(r, c).get_num() * (l / m(r, c).get_den());
      }
    }
    index_.assign(std::size_t{1} << n_, 0);
    by_size_.resize(static_cast<std::size_t>(n_ + 1));
    for (unsigned mask = 0; mask < (1U << n_); ++mask) {
      auto& list = by_size_[static_cast<std::size_t>(std::popcount(mask))];
      index_[mask] = static_cast<int>(list.size());
      list.push_back(mask);
    }
    values_.resize(static_cast<std::size_t>(n_ + 1));
    values_[0].assign(1, 1);
    for (int k = 1; k <= n_; ++k) {
      const auto& subsets = by_size_[static_cast<std::size_t>(k)];
      const std::size_t count = subsets.size();
      auto& level = values_[static_cast<std::size_t>(k)];
      level.assign(count * count, 0);
      for (std::size_t ri = 0; ri < count; ++ri) {
        unsigned rows = subsets[ri];
        int r0 = std::countr_zero(rows);
        unsigned rest_rows = rows & (rows - 1);
        for (std::size_t ci = 0; ci < count; ++ci) {
          unsigned cols = subsets[ci];
          mpz_class acc = 0;
          int sign_pos = 0;
          for (unsigned cs = cols; cs != 0; cs &= cs - 1, ++sign_pos) {
            int c = std::countr_zero(cs);
            const mpz_class& entry = b[static_cast<std::size_t>(r0 * n_ + c)];
            if (entry == 0) continue;
            const mpz_class& sub = get(rest_rows, cols & ~(1U << c));
            if (sub == 0) continue;
            if (sign_pos % 2 == 0) acc += entry * sub;
            else acc -= entry * sub;
          }
          level[ri * count + ci] = std::move(acc);
        }
      }
    }
  }

  int size() const { return n_; }
  /// Minor of the scaled matrix on 0-based row and column masks.
  const mpz_class& get(unsigned rows, unsigned cols) const {
    int k = std::popcount(rows);
    std::size_t count = by_size_[static_cast<std::size_t>(k)].size();
    return values_[static_cast<std::size_t>(k)][static_cast<std::size_t>(index_[rows]) * count +
                                                static_cast<std::size_t>(index_[cols])];
  }
  const std::vector<unsigned>& subsets(int k) const { return by_size_[static_cast<std::size_t>(k)]; }
  const mpz_class& scale(int row) const { return scale_[static_cast<std::size_t>(row)]; }

 private:
  int n_;
  std::vector<mpz_class> scale_;
  std::vector<int> index_;
  std::vector<std::vector<unsigned>> by_size_;
  std::vector<std::vector<mpz_class>> values_;
};

}  // namespace detail

inline bool is_tnn(const UnitriangularMatrix& p) {
  detail::MinorTable minors(p);
  for (int k = 1; k <= p.size(); ++k)
    for (unsigned rows : minors.subsets(k))
      for (unsigned cols : minors.subsets(k))
        if (minors.get(rows, cols) < 0) return false;
  return true;
}

/// For every generator i = 1..n-1 (entry i-1 of the result): the largest
/// s >= 0 with x_i(-s) p totally nonnegative. Row i of x_i(-s) p is
/// row_i - s row_{i+1}, so each minor using row i but not row i+1 is affine
/// in s; the bound is the smallest root among those with negative slope.
/// Requires p to be TNN.
inline std::vector<Rational> extraction_bounds(const UnitriangularMatrix& p) {
  detail::MinorTable minors(p);
  const int n = p.size();
  std::vector<Rational> bounds;
  for (int i = 1; i < n; ++i) {
    const unsigned row = 1U << (i - 1), next = 1U << i;
    mpz_class best_num = 0, best_den = 0;  // best_den == 0 means unset
    for (int k = 1; k < n; ++k) {
      for (unsigned rows : minors.subsets(k)) {
        if (!(rows & row) || (rows & next)) continue;
        unsigned swapped = (rows & ~row) | next;
        for (unsigned cols : minors.subsets(k)) {
          const mpz_class& slope = minors.get(swapped, cols);
          if (slope <= 0) continue;
          const mpz_class& value = minors.get(rows, cols);
          if (best_den == 0 || value * best_den < best_num * slope) {
            best_num = value;
            best_den = slope;
          }
        }
      }
    }
    Rational bound(best_num * minors.scale(i), best_den * minors.scale(i - 1));
    bound.canonicalize();
    bounds.push_back(std::move(bound));
  }
  return bounds;
}

inline Rational extraction_bound(const UnitriangularMatrix& p, Generator i) {
  if (i < 1 || i >= p.size()) throw Error(ErrorCode::DimensionMismatch, "generator outside [1, n-1]");
  return extraction_bounds(p)[static_cast<std::size_t>(i - 1)];
}

/// Largest s >= 0 with p x_i(-s) totally nonnegative (extraction on the right).
inline Rational right_extraction_bound(const UnitriangularMatrix& p, Generator i) {
  return extraction_bound(p.flipped(), p.size() - i);
}

/// f_Q(t), exact.
inline UnitriangularMatrix evaluate(int n, const Word& word, const std::vector<Rational>& params) {
  if (params.size() != word.size()) {
    throw Error(ErrorCode::DimensionMismatch, "word has " + std::to_string(word.size()) + " letters but " +
                                                  std::to_string(params.size()) + " parameters were given");
  }
  UnitriangularMatrix m(n);
  for (std::size_t k = 0; k < word.size(); ++k) m.right_multiply(word[k], params[k]);
  return m;
}

/// x_{i_r}(-k_r) ... x_{i_1}(-k_1) p.
inline UnitriangularMatrix change_fiber(const UnitriangularMatrix& p, const Word& prefix, const std::vector<Rational>& ks) {
  if (ks.size() != prefix.size()) throw Error(ErrorCode::DimensionMismatch, "prefix and values differ in length");
  UnitriangularMatrix q = p;
  for (std::size_t k = 0; k < prefix.size(); ++k) q.left_multiply(prefix[k], -ks[k]);
  return q;
}

/// Parameters of p along a reduced word: each parameter is the full
/// extraction bound of the running residue. Throws NotInCell unless every
/// parameter is positive and the residue ends at the identity.
inline std::vector<Rational> factorize(const UnitriangularMatrix& p, const Word& reduced_word) {
  UnitriangularMatrix residue = p;
  std::vector<Rational> params;
  for (Generator i : reduced_word) {
    Rational t = extraction_bound(residue, i);
    if (t <= 0) throw Error(ErrorCode::NotInCell, "extraction of letter " + std::to_string(i) + " hit 0");
    residue.left_multiply(i, -t);
    params.push_back(std::move(t));
  }
  if (!residue.is_identity()) throw Error(ErrorCode::NotInCell, "residue after factorization is not the identity");
  if (evaluate(p.size(), reduced_word, params) != p) throw Error(ErrorCode::ValidationFailed, "factorization does not reproduce p");
  return params;
}

/// The same parameters computed from the other end: right extraction of
/// the last letter first. Throws NotInCell like factorize.
inline std::vector<Rational> factorize_from_right(const UnitriangularMatrix& p, const Word& reduced_word) {
  UnitriangularMatrix residue = p;
  std::vector<Rational> params(reduced_word.size());
  for (std::size_t k = reduced_word.size(); k-- > 0;) {
    Rational t = right_extraction_bound(residue, reduced_word[k]);
    if (t <= 0) throw Error(ErrorCode::NotInCell, "right extraction of letter " + std::to_string(reduced_word[k]) + " hit 0");
    residue.right_multiply(reduced_word[k], -t);
    params[k] = std::move(t);
  }
  if (!residue.is_identity()) throw Error(ErrorCode::NotInCell, "residue after factorization is not the identity");
  return params;
}

inline bool is_type_a(const CoxeterSystem& sys, int n) {
  return sys.rank() == n - 1 && sys.matrix() == named_coxeter_matrix("A" + std::to_string(n - 1));
}

struct CellDecomposition {
  Element cell;
  Word extraction_word;  // reduced; p = f_word(params)
  std::vector<Rational> params;
};

/// Identifies the cell U+(w) containing p: extract fully at the smallest
/// generator with a positive bound, repeat until the identity is reached.
inline CellDecomposition cell_of(const CoxeterSystem& sys, const UnitriangularMatrix& p) {
  const int n = p.size();
  if (!is_type_a(sys, n)) {
    throw Error(ErrorCode::DimensionMismatch, "cell identification needs the A" + std::to_string(n - 1) + " system");
  }
  if (!is_tnn(p)) throw Error(ErrorCode::NotTNN, "matrix has a negative minor");
  CellDecomposition out{sys.identity(), {}, {}};
  UnitriangularMatrix residue = p;
  while (!residue.is_identity()) {
    if (out.extraction_word.length() > sys.length(sys.longest())) {
      throw Error(ErrorCode::ValidationFailed, "cell extraction did not terminate");
    }
    auto bounds = extraction_bounds(residue);
    auto it = std::find_if(bounds.begin(), bounds.end(), [](const Rational& b) { return b > 0; });
    if (it == bounds.end()) throw Error(ErrorCode::ValidationFailed, "non-identity TNN matrix with no extractable letter");
    Generator i = static_cast<Generator>(it - bounds.begin()) + 1;
    residue.left_multiply(i, -*it);
    out.extraction_word.push_back(i);
    out.params.push_back(*it);
  }
  if (!is_reduced(sys, out.extraction_word)) throw Error(ErrorCode::ValidationFailed, "extraction word is not reduced");
  out.cell = product(sys, out.extraction_word);
  return out;
}

}  // namespace tnnfibers
