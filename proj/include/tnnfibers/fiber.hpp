#pragma once

// Fibers f_Q^{-1}(p) of type-A maps: forced and free coordinates, the
// maximal value of a free coordinate, the cell parametrization f_F of a
// stratum and its inverse, tuning a coordinate down, and full probes of
// the natural stratification with exact witnesses.
//
// Coordinates are processed left to right. A position is free (in S) iff its
// letter is redundant in the suffix starting there; otherwise its value is
// forced by the changed-fiber point to its left.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tnnfibers/complexes.hpp"
#include "tnnfibers/demazure.hpp"
#include "tnnfibers/error.hpp"
#include "tnnfibers/posets.hpp"
#include "tnnfibers/rewrite.hpp"
#include "tnnfibers/tnn.hpp"

namespace tnnfibers {

/// Counts of t_max evaluations and of the independent cross-check.
struct TmaxAudit {
  std::size_t calls = 0;
  std::size_t cross_checked = 0;
  std::size_t disagreements = 0;
};

struct FiberOptions {
  bool cross_check = true;
  TmaxAudit* audit = nullptr;
};

/// A fiber of f_ambient over p restricted to the closed stratum `support`
/// (coordinates outside it are 0).
class FiberContext {
 public:
  FiberContext(const CoxeterSystem& sys, Word ambient, UnitriangularMatrix p, PositionSet support,
               FiberOptions options = {}, std::optional<Element> known_cell = std::nullopt)
      : sys_(&sys), ambient_(std::move(ambient)), p_(std::move(p)), support_(support), options_(options) {
    sys.require_valid(ambient_);
    if (ambient_.length() > kMaxPositionSetWord) throw Error(ErrorCode::TooLarge, "ambient word longer than 32 letters");
    if ((support_ & ~full_set(ambient_.length())) != 0) throw Error(ErrorCode::BadInput, "support outside the ambient word");
    w_ = known_cell ? *known_cell : cell_of(sys, p_).cell;
    positions_ = positions_of(support_);
    word_ = ambient_.subword(support_);
    if (demazure_product(sys, word_) != w_) {
      throw Error(ErrorCode::CellMismatch, "Demazure product of the support is " + sys.name(demazure_product(sys, word_)) +
                                               " but p lies in the cell of " + sys.name(w_));
    }
    PositionSet local_sc = rightmost_reduced_subword(sys, word_, w_);
    free_.assign(word_.size(), false);
    for (std::size_t r = 0; r < word_.size(); ++r) {
      const int pos = positions_[r];
      if (has_position(local_sc, static_cast<int>(r) + 1)) {
        sc_ |= singleton(pos);
      } else {
        s_ |= singleton(pos);
        free_[r] = true;
      }
    }
  }

  /// Support = every ambient position.
  static FiberContext full(const CoxeterSystem& sys, Word ambient, UnitriangularMatrix p, FiberOptions options = {}) {
    PositionSet all = full_set(ambient.length());
    return FiberContext(sys, std::move(ambient), std::move(p), all, options);
  }

  const CoxeterSystem& system() const { return *sys_; }
  int n() const { return p_.size(); }
  const Word& ambient() const { return ambient_; }
  const UnitriangularMatrix& point() const { return p_; }
  Element target() const { return w_; }
  PositionSet support() const { return support_; }
  PositionSet free_positions() const { return s_; }
  PositionSet forced_positions() const { return sc_; }
  int free_dimension() const { return cardinality(s_); }
  const FiberOptions& options() const { return options_; }

  /// Letters at the support, and their ambient positions.
  const Word& local_word() const { return word_; }
  const std::vector<int>& local_positions() const { return positions_; }
  bool is_free_local(std::size_t r) const { return free_[r]; }

  std::vector<Rational> to_ambient(const std::vector<Rational>& local) const {
    std::vector<Rational> out(ambient_.size(), 0);
    for (std::size_t r = 0; r < local.size(); ++r) out[static_cast<std::size_t>(positions_[r] - 1)] = local[r];
    return out;
  }

 private:
  const CoxeterSystem* sys_;
  Word ambient_;
  UnitriangularMatrix p_;
  PositionSet support_;
  FiberOptions options_;
  Element w_{};
  std::vector<int> positions_;
  Word word_;
  std::vector<bool> free_;
  PositionSet s_ = 0, sc_ = 0;
};

namespace detail {

/// t_max of local position r (0-based) given the changed-fiber point q.
///
/// Primary: the extraction bound of q at the letter. Validation: removing
/// that much must land in the cell of s_i δ(Q'), where Q' is the suffix
/// with the deletion partners of its first letter removed. Cross-check: the
/// first parameter of q along the reduced word (i) + NF(s_i δ(Q')),
/// computed by extracting from the right end.
inline Rational t_max_local(const FiberContext& ctx, std::size_t r, const UnitriangularMatrix& q) {
  const CoxeterSystem& sys = ctx.system();
  const Word& word = ctx.local_word();
  const Generator i = word[r];
  if (ctx.options().audit) ++ctx.options().audit->calls;
  Rational primary = extraction_bound(q, i);
  if (primary <= 0) throw Error(ErrorCode::ValidationFailed, "t_max vanished at a free coordinate");

  const Word suffix = word.slice(static_cast<int>(r) + 1, word.length());
  PositionSet keep = full_set(suffix.length());
  for (int k : deletion_partners(sys, suffix, 1)) keep &= ~singleton(k);
  const Element delta_q1 = demazure_product(sys, suffix.subword(keep));
  const Element target = sys.left_mul(i, delta_q1);
  if (sys.length(target) >= sys.length(delta_q1)) {
    throw Error(ErrorCode::ValidationFailed, "letter is not a left descent after removing its deletion partners");
  }
  UnitriangularMatrix residue = q;
  residue.left_multiply(i, -primary);
  if (cell_of(sys, residue).cell != target) {
    throw Error(ErrorCode::ValidationFailed, "residue after removing t_max is not in the cell of " + sys.name(target));
  }
  if (ctx.options().cross_check) {
    Word reduced = Word{i}.concat(sys.normal_form(target));
    Rational fallback;
    try {
      fallback = factorize_from_right(q, reduced).front();
    } catch (const Error& e) {
      if (ctx.options().audit) ++ctx.options().audit->disagreements;
      throw Error(ErrorCode::ValidationFailed, std::string("t_max cross-check failed: ") + e.what());
    }
    if (ctx.options().audit) ++ctx.options().audit->cross_checked;
    if (fallback != primary) {
      if (ctx.options().audit) ++ctx.options().audit->disagreements;
      throw Error(ErrorCode::ValidationFailed, "t_max paths disagree: " + format_rational(primary) + " vs " +
                                                   format_rational(fallback));
    }
  }
  return primary;
}

inline Rational forced_value(const UnitriangularMatrix& q, Generator i) {
  Rational t = extraction_bound(q, i);
  if (t <= 0) throw Error(ErrorCode::ValidationFailed, "forced coordinate vanished");
  return t;
}

inline void require_in_fiber(const FiberContext& ctx, const std::vector<Rational>& t) {
  if (t.size() != ctx.ambient().size()) throw Error(ErrorCode::DimensionMismatch, "parameter vector does not match the ambient word");
  for (const auto& x : t)
    if (x < 0) throw Error(ErrorCode::NotInFiber, "negative coordinate");
  if (evaluate(ctx.n(), ctx.ambient(), t) != ctx.point()) throw Error(ErrorCode::NotInFiber, "parameters do not evaluate to p");
}

}  // namespace detail

/// The cell U+(w) of p must equal δ(word). When the last letter is
/// non-redundant its coordinate is the same for the whole fiber and is
/// returned (right extraction bound); otherwise nullopt.
inline std::optional<Rational> unique_end_value(const CoxeterSystem& sys, const UnitriangularMatrix& p, const Word& word) {
  if (word.empty()) throw Error(ErrorCode::BadInput, "empty word");
  if (cell_of(sys, p).cell != demazure_product(sys, word)) throw Error(ErrorCode::CellMismatch, "p is not in the cell of δ(word)");
  if (is_redundant(sys, word, word.length())) return std::nullopt;
  return right_extraction_bound(p, word.at(word.length()));
}

/// Mirror of unique_end_value for the first letter.
inline std::optional<Rational> unique_start_value(const CoxeterSystem& sys, const UnitriangularMatrix& p, const Word& word) {
  if (word.empty()) throw Error(ErrorCode::BadInput, "empty word");
  if (cell_of(sys, p).cell != demazure_product(sys, word)) throw Error(ErrorCode::CellMismatch, "p is not in the cell of δ(word)");
  if (is_redundant(sys, word, 1)) return std::nullopt;
  return extraction_bound(p, word.at(1));
}

/// Largest value of the free coordinate at ambient position j given the
/// values at positions 1..j-1 (`prefix`, zero outside the support).
inline Rational t_max(const FiberContext& ctx, int j, const std::vector<Rational>& prefix) {
  if (!has_position(ctx.free_positions(), j)) throw Error(ErrorCode::BadInput, "position is not a free coordinate");
  if (static_cast<int>(prefix.size()) != j - 1) throw Error(ErrorCode::DimensionMismatch, "prefix must cover positions before j");
  UnitriangularMatrix q = ctx.point();
  for (int pos = 1; pos < j; ++pos) {
    const Rational& v = prefix[static_cast<std::size_t>(pos - 1)];
    if (!has_position(ctx.support(), pos)) {
      if (v != 0) throw Error(ErrorCode::PreconditionFailed, "nonzero value outside the support");
      continue;
    }
    q.left_multiply(ctx.ambient().at(pos), -v);
  }
  const auto& positions = ctx.local_positions();
  const auto r = static_cast<std::size_t>(std::find(positions.begin(), positions.end(), j) - positions.begin());
  return detail::t_max_local(ctx, r, q);
}

/// Parametrization of the union of strata between the vertex v (support
/// S^C) and the stratum of the support: free coordinate r gets
/// u_r * t_max, forced coordinates their unique value. Returns ambient
/// coordinates (zero outside the support) evaluating exactly to p.
inline std::vector<Rational> f_F(const FiberContext& ctx, const std::vector<Rational>& u) {
  if (static_cast<int>(u.size()) != ctx.free_dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "stratum has " + std::to_string(ctx.free_dimension()) + " free coordinates, got " +
                                                  std::to_string(u.size()));
  }
  for (const auto& x : u)
    if (x < 0 || x >= 1) throw Error(ErrorCode::BadInput, "u coordinates must lie in [0, 1)");
  const Word& word = ctx.local_word();
  UnitriangularMatrix q = ctx.point();
  std::vector<Rational> local;
  std::size_t k = 0;
  for (std::size_t r = 0; r < word.size(); ++r) {
    Rational t = ctx.is_free_local(r) ? u[k++] * detail::t_max_local(ctx, r, q) : detail::forced_value(q, word[r]);
    q.left_multiply(word[r], -t);
    local.push_back(std::move(t));
  }
  if (!q.is_identity()) throw Error(ErrorCode::ValidationFailed, "f_F did not exhaust p");
  auto out = ctx.to_ambient(local);
  if (evaluate(ctx.n(), ctx.ambient(), out) != ctx.point()) throw Error(ErrorCode::ValidationFailed, "f_F left the fiber");
  return out;
}

/// Inverse of f_F: u_r = t_{j_r} / t_max, left to right.
inline std::vector<Rational> f_F_inverse(const FiberContext& ctx, const std::vector<Rational>& t) {
  detail::require_in_fiber(ctx, t);
  for (int pos = 1; pos <= ctx.ambient().length(); ++pos) {
    const Rational& v = t[static_cast<std::size_t>(pos - 1)];
    if (!has_position(ctx.support(), pos) && v != 0) throw Error(ErrorCode::NotInFiber, "support exceeds the stratum");
    if (has_position(ctx.forced_positions(), pos) && v == 0) throw Error(ErrorCode::NotInFiber, "support misses the vertex");
  }
  const Word& word = ctx.local_word();
  UnitriangularMatrix q = ctx.point();
  std::vector<Rational> u;
  for (std::size_t r = 0; r < word.size(); ++r) {
    const Rational& value = t[static_cast<std::size_t>(ctx.local_positions()[r] - 1)];
    if (ctx.is_free_local(r)) {
      Rational tm = detail::t_max_local(ctx, r, q);
      if (value >= tm) throw Error(ErrorCode::MaximalValueEncountered, "a free coordinate attains its maximum");
      u.push_back(value / tm);
    } else if (value != detail::forced_value(q, word[r])) {
      throw Error(ErrorCode::ValidationFailed, "forced coordinate differs from its unique value");
    }
    q.left_multiply(word[r], -value);
  }
  if (f_F(ctx, u) != t) throw Error(ErrorCode::ValidationFailed, "f_F roundtrip failed");
  return u;
}

/// Forced coordinates (S^C, in position order) given the free ones.
inline std::vector<Rational> rtn(const FiberContext& ctx, const std::vector<Rational>& ks) {
  if (static_cast<int>(ks.size()) != ctx.free_dimension()) throw Error(ErrorCode::DimensionMismatch, "one value per free coordinate");
  Rational sum = 0;
  for (const auto& k : ks) {
    if (k < 0) throw Error(ErrorCode::BadInput, "values must be nonnegative");
    sum += k;
  }
  if (!ks.empty() && sum >= ctx.point().superdiagonal_sum()) {
    throw Error(ErrorCode::MaximalOrExcessive, "free values exhaust the coordinate sum");
  }
  const Word& word = ctx.local_word();
  UnitriangularMatrix q = ctx.point();
  std::vector<Rational> local, forced;
  std::size_t k = 0;
  for (std::size_t r = 0; r < word.size(); ++r) {
    Rational t;
    if (ctx.is_free_local(r)) {
      t = ks[k++];
      if (t >= detail::t_max_local(ctx, r, q)) throw Error(ErrorCode::MaximalOrExcessive, "value is not below its t_max");
    } else {
      t = detail::forced_value(q, word[r]);
      forced.push_back(t);
    }
    q.left_multiply(word[r], -t);
    local.push_back(std::move(t));
  }
  if (!q.is_identity() || evaluate(ctx.n(), ctx.ambient(), ctx.to_ambient(local)) != ctx.point()) {
    throw Error(ErrorCode::ValidationFailed, "rtn result leaves the fiber");
  }
  return forced;
}

namespace detail {

struct MoveTrace {
  std::vector<Move> moves;
  std::vector<Rational> merged_left;  // left parameter before each nilMerge, aligned with moves
};

inline void record(ParamWord& pw, MoveTrace& trace, const Move& m) {
  trace.merged_left.push_back(m.kind == MoveKind::NilMerge ? pw.params[static_cast<std::size_t>(m.pos - 1)] : Rational(0));
  pw = apply_move(pw, m, BraidPolicy::Lenient);
  trace.moves.push_back(m);
}

/// Braid moves turning the reduced word `pw.word` into `target`.
inline void braid_to(const CoxeterSystem& sys, ParamWord& pw, const Word& target, MoveTrace& trace) {
  for (const Move& m : to_param_moves(sys, pw.word, braid_path(sys, pw.word, target))) record(pw, trace, m);
}

/// Braid and nil-merge moves reducing pw.word to a reduced word.
inline void reduce(const CoxeterSystem& sys, ParamWord& pw, MoveTrace& trace) {
  while (!is_reduced(sys, pw.word)) {
    int k = 2;
    while (is_reduced(sys, pw.word.slice(1, k))) ++k;
    const Word head = pw.word.slice(1, k - 1);
    const Generator s = pw.word.at(k);
    Word target = sys.normal_form(sys.right_mul(product(sys, head), s));
    target.push_back(s);
    ParamWord front(head, std::vector<Rational>(pw.params.begin(), pw.params.begin() + (k - 1)));
    MoveTrace local;
    braid_to(sys, front, target, local);
    for (const Move& m : local.moves) record(pw, trace, m);
    record(pw, trace, Move{k - 1, MoveKind::NilMerge, 0});
  }
}

inline void undo(ParamWord& pw, const MoveTrace& trace) {
  for (std::size_t k = trace.moves.size(); k-- > 0;) {
    const Move& m = trace.moves[k];
    if (m.kind == MoveKind::NilMerge) {
      const Rational& current = pw.params[static_cast<std::size_t>(m.pos - 1)];
      Rational a = trace.merged_left[k] < current ? trace.merged_left[k] : current;
      pw = apply_move(pw, Move{m.pos, MoveKind::NilSplit, a}, BraidPolicy::Lenient);
    } else {
      pw = apply_move(pw, m, BraidPolicy::Lenient);
    }
  }
}

}  // namespace detail

/// Lowers coordinate l (ambient position) of the fiber point t to
/// `new_value`, keeping coordinates left of l, by moving the difference
/// into the suffix: reduce the suffix by braid and nil moves, braid the
/// letter of l to its front, add the mass there, and undo the moves.
inline std::vector<Rational> tune_down(const FiberContext& ctx, const std::vector<Rational>& t, int l, const Rational& new_value) {
  const CoxeterSystem& sys = ctx.system();
  const Word& ambient = ctx.ambient();
  if (l < 1 || l > ambient.length()) throw Error(ErrorCode::BadInput, "position out of range");
  detail::require_in_fiber(ctx, t);
  const Rational& current = t[static_cast<std::size_t>(l - 1)];
  if (new_value < 0 || new_value > current) throw Error(ErrorCode::PreconditionFailed, "need 0 <= new value <= current value");
  if (new_value == current) return t;
  const Word suffix = ambient.slice(l, ambient.length());
  if (!is_redundant(sys, suffix, 1)) throw Error(ErrorCode::NoPartner, "letter is not redundant in its suffix");
  UnitriangularMatrix q = ctx.point();
  for (int pos = 1; pos < l; ++pos) q.left_multiply(ambient.at(pos), -t[static_cast<std::size_t>(pos - 1)]);
  if (cell_of(sys, q).cell != ctx.target()) {
    throw Error(ErrorCode::PreconditionFailed, "the changed-fiber point left of l is not in the cell of p");
  }

  const Generator i = ambient.at(l);
  ParamWord rest(ambient.slice(l + 1, ambient.length()),
                 std::vector<Rational>(t.begin() + l, t.end()));
  detail::MoveTrace trace;
  detail::reduce(sys, rest, trace);
  Word front{i};
  detail::braid_to(sys, rest, front.concat(sys.normal_form(sys.left_mul(i, product(sys, rest.word)))), trace);
  rest.params.front() += current - new_value;
  detail::undo(rest, trace);

  std::vector<Rational> out(t.begin(), t.begin() + l);
  out.back() = new_value;
  out.insert(out.end(), rest.params.begin(), rest.params.end());
  if (rest.word != ambient.slice(l + 1, ambient.length()) || evaluate(ctx.n(), ambient, out) != ctx.point()) {
    throw Error(ErrorCode::ValidationFailed, "tuned point left the fiber");
  }
  return out;
}

/// Rationals in (0, 1) by increasing denominator: 1/2, 1/3, 2/3, 1/4, ...
inline Rational generic_value(std::size_t index) {
  for (long den = 2;; ++den) {
    for (long num = 1; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      if (index-- == 0) return Rational(num, den);
    }
  }
}

struct StratumWitness {
  PositionSet stratum;
  int dim;
  std::vector<Rational> u;
  std::vector<Rational> params;  // ambient coordinates, support exactly `stratum`
};

struct EmptinessCertificate {
  PositionSet subset;
  Element cell;  // cell_of(evaluate(subset, all ones)) = δ(subset) != w
};

struct StrataProbe {
  Word ambient;
  Element target;
  UnitriangularMatrix point;
  std::vector<StratumWitness> strata;  // sorted by position_set_less
  std::vector<EmptinessCertificate> empty_certificates;
  StrataPoset combinatorial;
  Poset witnessed;
  bool poset_isomorphic_to_combinatorial = false;
};

inline PositionSet support_of(const std::vector<Rational>& t) {
  PositionSet s = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k] != 0) s |= singleton(static_cast<int>(k) + 1);
  return s;
}

inline constexpr std::size_t kWitnessAttempts = 64;

/// Every subset P of the ambient positions either gets a witness (support
/// exactly P, evaluating to p) when δ(P) = w, or an emptiness certificate.
/// The poset of witness supports must match the combinatorial strata poset.
inline StrataProbe enumerate_strata(const CoxeterSystem& sys, const Word& ambient, const UnitriangularMatrix& p,
                                    FiberOptions options = {}) {
  sys.require_valid(ambient);
  if (ambient.length() > kMaxSubsetWord) throw Error(ErrorCode::TooLarge, "probe is capped at 22 letters");
  const CellDecomposition cell = cell_of(sys, p);
  const Element w = cell.cell;
  const auto delta = subword_demazure_table(sys, ambient);
  StrataProbe probe{ambient, w, p, {}, {}, {}, {}, false};
  const int n = p.size();
  for (std::size_t raw = 0; raw < delta.size(); ++raw) {
    const auto subset = static_cast<PositionSet>(raw);
    if (delta[raw] != w) {
      Word letters = ambient.subword(subset);
      Element c = cell_of(sys, evaluate(n, letters, std::vector<Rational>(letters.size(), 1))).cell;
      if (c == w) throw Error(ErrorCode::WitnessFailed, "subset with δ != w reaches the cell of p");
      probe.empty_certificates.push_back({subset, c});
      continue;
    }
    FiberContext ctx(sys, ambient, p, subset, options, w);
    const int dim = ctx.free_dimension();
    bool done = false;
    for (std::size_t attempt = 0; attempt < kWitnessAttempts && !done; ++attempt) {
      std::vector<Rational> u(static_cast<std::size_t>(dim));
      for (std::size_t r = 0; r < u.size(); ++r) u[r] = attempt == 0 ? Rational(1, 2) : generic_value(attempt + r);
      auto params = f_F(ctx, u);
      if (support_of(params) != subset) continue;
      probe.strata.push_back({subset, dim, std::move(u), std::move(params)});
      done = true;
    }
    if (!done) throw Error(ErrorCode::WitnessFailed, "no witness with support exactly " + format_word(Word(positions_of(subset))));
  }
  std::sort(probe.strata.begin(), probe.strata.end(),
            [](const StratumWitness& a, const StratumWitness& b) { return position_set_less(a.stratum, b.stratum); });
  std::sort(probe.empty_certificates.begin(), probe.empty_certificates.end(),
            [](const EmptinessCertificate& a, const EmptinessCertificate& b) { return position_set_less(a.subset, b.subset); });
  std::vector<PositionSet> supports;
  for (const auto& s : probe.strata) supports.push_back(support_of(s.params));
  probe.witnessed = Poset::from_relation(supports.size(), [&](int a, int b) {
    return (supports[static_cast<std::size_t>(a)] & ~supports[static_cast<std::size_t>(b)]) == 0;
  });
  if (contains(sys, ambient, w)) {
    probe.combinatorial = strata_poset(sys, ambient, w);
  } else {
    probe.combinatorial = make_strata_poset(sys, ambient, w, {});
  }
  probe.poset_isomorphic_to_combinatorial = poset_isomorphic(probe.witnessed, probe.combinatorial.order);
  if (!probe.poset_isomorphic_to_combinatorial) {
    throw Error(ErrorCode::WitnessFailed, "witnessed strata poset differs from the combinatorial one");
  }
  return probe;
}

}  // namespace tnnfibers
