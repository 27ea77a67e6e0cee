#pragma once

// Moves on parametrized type-A words that preserve the matrix product:
// commutation, the m = 3 braid move with its rational coordinate change,
// and the modified nil move x_i(a) x_i(b) = x_i(a + b) with its splitting.

#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "tnnfibers/coxeter.hpp"
#include "tnnfibers/error.hpp"
#include "tnnfibers/tnn.hpp"
#include "tnnfibers/word.hpp"

namespace tnnfibers {

struct ParamWord {
  Word word;
  std::vector<Rational> params;

  ParamWord() = default;
  ParamWord(Word w, std::vector<Rational> t) : word(std::move(w)), params(std::move(t)) {
    if (params.size() != word.size()) throw Error(ErrorCode::DimensionMismatch, "word and parameters differ in length");
    for (const auto& x : params)
      if (x < 0) throw Error(ErrorCode::BadInput, "parameters must be nonnegative");
  }

  bool operator==(const ParamWord&) const = default;
};

enum class MoveKind { Comm, Braid3, NilMerge, NilSplit };

inline std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Comm: return "comm";
    case MoveKind::Braid3: return "braid3";
    case MoveKind::NilMerge: return "nilMerge";
    case MoveKind::NilSplit: return "nilSplit";
  }
  return "?";
}

inline MoveKind parse_move_kind(std::string_view s) {
  if (s == "comm") return MoveKind::Comm;
  if (s == "braid3") return MoveKind::Braid3;
  if (s == "nilMerge") return MoveKind::NilMerge;
  if (s == "nilSplit") return MoveKind::NilSplit;
  throw Error(ErrorCode::BadInput, "unknown move kind '" + std::string(s) + "'");
}

/// `pos` is the 1-based position of the first affected letter; `a` is used
/// only by nilSplit (the left part of the split parameter).
struct Move {
  int pos = 1;
  MoveKind kind = MoveKind::Comm;
  Rational a = 0;

  bool operator==(const Move&) const = default;
};

/// Strict: a braid3 move on (t1, t2, t3) with t1 + t3 = 0 is BraidDegenerate.
/// Lenient: that case (a single factor x_j(t2)) maps to (t2, 0, 0), which the
/// strict formula sends back to (0, t2, 0).
enum class BraidPolicy { Strict, Lenient };

/// Type-A parameter transport for one move.
inline ParamWord apply_move(const ParamWord& pw, const Move& move, BraidPolicy policy = BraidPolicy::Strict) {
  const int len = pw.word.length();
  const int span = move.kind == MoveKind::Braid3 ? 3 : move.kind == MoveKind::NilSplit ? 1 : 2;
  if (move.pos < 1 || move.pos + span - 1 > len) {
    throw Error(ErrorCode::PatternMismatch, "move at position " + std::to_string(move.pos) + " does not fit a word of length " +
                                                std::to_string(len));
  }
  std::vector<Generator> w = pw.word.letters();
  std::vector<Rational> t = pw.params;
  const auto k = static_cast<std::size_t>(move.pos - 1);
  switch (move.kind) {
    case MoveKind::Comm: {
      if (std::abs(w[k] - w[k + 1]) < 2) throw Error(ErrorCode::PatternMismatch, "comm needs commuting letters");
      std::swap(w[k], w[k + 1]);
      std::swap(t[k], t[k + 1]);
      break;
    }
    case MoveKind::Braid3: {
      if (w[k] != w[k + 2] || std::abs(w[k] - w[k + 1]) != 1) {
        throw Error(ErrorCode::PatternMismatch, "braid3 needs a pattern (i, i±1, i)");
      }
      const Rational t1 = t[k], t2 = t[k + 1], t3 = t[k + 2];
      const Rational s = t1 + t3;
      if (s == 0) {
        if (policy == BraidPolicy::Strict) throw Error(ErrorCode::BraidDegenerate, "braid3 with t1 + t3 = 0");
        t[k] = t2;
        t[k + 1] = 0;
        t[k + 2] = 0;
      } else {
        t[k] = t2 * t3 / s;
        t[k + 1] = s;
        t[k + 2] = t1 * t2 / s;
      }
      std::swap(w[k], w[k + 1]);
      w[k + 2] = w[k];
      break;
    }
    case MoveKind::NilMerge: {
      if (w[k] != w[k + 1]) throw Error(ErrorCode::PatternMismatch, "nilMerge needs equal adjacent letters");
      t[k] += t[k + 1];
      w.erase(w.begin() + static_cast<long>(k) + 1);
      t.erase(t.begin() + static_cast<long>(k) + 1);
      break;
    }
    case MoveKind::NilSplit: {
      if (move.a < 0 || move.a > t[k]) throw Error(ErrorCode::PatternMismatch, "nilSplit needs 0 <= a <= t");
      w.insert(w.begin() + static_cast<long>(k), w[k]);
      Rational rest = t[k] - move.a;
      t[k] = move.a;
      t.insert(t.begin() + static_cast<long>(k) + 1, rest);
      break;
    }
  }
  return ParamWord(Word(std::move(w)), std::move(t));
}

inline ParamWord transport(ParamWord pw, const std::vector<Move>& moves, BraidPolicy policy = BraidPolicy::Strict) {
  for (const auto& m : moves) pw = apply_move(pw, m, policy);
  return pw;
}

/// Parameter moves realizing a braid path (type A: long moves are braid3).
inline std::vector<Move> to_param_moves(const CoxeterSystem& sys, const Word& from, const std::vector<BraidMove>& path) {
  std::vector<Move> out;
  Word current = from;
  for (const auto& bm : path) {
    if (bm.long_move && sys.matrix().m(current.at(bm.position), current.at(bm.position + 1)) != 3) {
      throw Error(ErrorCode::PatternMismatch, "parameter transport supports only m = 2 and m = 3 braid moves");
    }
    out.push_back(Move{bm.position, bm.long_move ? MoveKind::Braid3 : MoveKind::Comm, 0});
    current = apply_braid_move(sys, current, bm);
  }
  return out;
}

inline UnitriangularMatrix evaluate(int n, const ParamWord& pw) { return evaluate(n, pw.word, pw.params); }

}  // namespace tnnfibers
