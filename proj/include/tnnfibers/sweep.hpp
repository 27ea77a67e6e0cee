#pragma once

// Exhaustive verification over all words Q of length <= L and all w with
// contains(Q, w): the strata poset's order complex is acyclic, and Δ(Q, w)
// is a homology sphere of dimension |Q| - l(w) - 1 exactly when δ(Q) = w
// and acyclic otherwise. Also tallies non-pure strata posets for the
// purity experiment. Work is split per word across threads; results are
// merged in word order, so the output does not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "tnnfibers/complexes.hpp"
#include "tnnfibers/homology.hpp"

namespace tnnfibers {

struct SweepOptions {
  int max_len = 7;
  int jobs = 1;
};

struct SweepFailure {
  Word q;
  Element w;
  std::string check;  // "acyclic" or "ball-sphere"
  bool operator==(const SweepFailure&) const = default;
};

struct PurityInstance {
  Word q;
  Element w;
  std::vector<int> maximal_dims;
  bool delta_is_w = false;
  bool weak_right_is_bruhat = false;
  bool weak_left_is_bruhat = false;
};

struct SweepSummary {
  std::size_t words = 0;
  std::size_t instances = 0;
  std::size_t acyclic_ok = 0;
  std::size_t sphere_ok = 0;  // δ(Q) = w and Δ(Q, w) has sphere homology
  std::size_t ball_ok = 0;    // δ(Q) != w and Δ(Q, w) is acyclic
  std::vector<SweepFailure> failures;
  std::vector<PurityInstance> non_pure;

  bool passed() const { return failures.empty(); }
};

/// All words over 1..rank of length 0..max_len, by length then lexicographically.
inline std::vector<Word> all_words(int rank, int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (Generator s = 1; s <= rank; ++s) {
        Word next = out[k];
        next.push_back(s);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

namespace detail {

struct WordOutcome {
  std::size_t instances = 0, acyclic_ok = 0, sphere_ok = 0, ball_ok = 0;
  std::vector<SweepFailure> failures;
  std::vector<PurityInstance> non_pure;
};

inline WordOutcome sweep_word(const CoxeterSystem& sys, const Word& q, const std::vector<char>& weak_right,
                              const std::vector<char>& weak_left) {
  WordOutcome out;
  const auto delta = subword_demazure_table(sys, q);
  const Element delta_q = delta.back();
  const ElementSet reachable = reduced_subword_products(sys, q);
  for (std::size_t id = 0; id < sys.size(); ++id) {
    const Element w = sys.element(id);
    if (!reachable.test(w)) continue;
    ++out.instances;
    std::vector<PositionSet> elements;
    for (std::size_t p = 0; p < delta.size(); ++p)
      if (delta[p] == w) elements.push_back(static_cast<PositionSet>(p));
    StrataPoset poset = make_strata_poset(sys, q, w, std::move(elements));
    if (reduced_homology(chain_faces(poset.order)).acyclic()) ++out.acyclic_ok;
    else out.failures.push_back({q, w, "acyclic"});

    const HomologyReport delta_homology = reduced_homology(subword_complex(sys, q, w));
    const bool is_sphere = delta_homology.is_sphere(q.length() - sys.length(w) - 1);
    const bool is_acyclic = delta_homology.acyclic();
    if (delta_q == w ? is_sphere : is_acyclic) {
      ++(delta_q == w ? out.sphere_ok : out.ball_ok);
    } else {
      out.failures.push_back({q, w, "ball-sphere"});
    }

    PurityReport purity = purity_report(poset);
    if (!purity.pure) {
      out.non_pure.push_back({q, w, purity.maximal_dims, delta_q == w, weak_right[id] != 0, weak_left[id] != 0});
    }
  }
  return out;
}

}  // namespace detail

inline SweepSummary run_sweep(const CoxeterSystem& sys, const SweepOptions& options) {
  if (options.max_len < 0 || options.max_len > kMaxSubsetWord) throw Error(ErrorCode::BadInput, "max-len must be in [0, 22]");
  if (options.jobs < 1) throw Error(ErrorCode::BadInput, "jobs must be >= 1");
  const std::vector<Word> words = all_words(sys.rank(), options.max_len);
  std::vector<char> weak_right(sys.size()), weak_left(sys.size());
  for (std::size_t id = 0; id < sys.size(); ++id) {
    weak_right[id] = weak_and_bruhat_lower_sets_agree(sys, sys.element(id), WeakSide::Right);
    weak_left[id] = weak_and_bruhat_lower_sets_agree(sys, sys.element(id), WeakSide::Left);
  }
  std::vector<detail::WordOutcome> outcomes(words.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(options.jobs));
  auto worker = [&](std::size_t slot) {
    try {
      for (std::size_t k = next++; k < words.size(); k = next++) {
        outcomes[k] = detail::sweep_word(sys, words[k], weak_right, weak_left);
      }
    } catch (...) {
      errors[slot] = std::current_exception();
      next = words.size();
    }
  };
  if (options.jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < options.jobs; ++j) pool.emplace_back(worker, static_cast<std::size_t>(j));
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepSummary summary;
  summary.words = words.size();
  for (auto& o : outcomes) {
    summary.instances += o.instances;
    summary.acyclic_ok += o.acyclic_ok;
    summary.sphere_ok += o.sphere_ok;
    summary.ball_ok += o.ball_ok;
    summary.failures.insert(summary.failures.end(), o.failures.begin(), o.failures.end());
    summary.non_pure.insert(summary.non_pure.end(), o.non_pure.begin(), o.non_pure.end());
  }
  return summary;
}

}  // namespace tnnfibers
