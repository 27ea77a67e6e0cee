// One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "oracles.hpp"

using namespace tnnfibers;

namespace {

using Clock = std::chrono::steady_clock;
using R = std::vector<Rational>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void guarded(int id, const char* name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

struct Instance {
  Word word;
  R params;
  UnitriangularMatrix p;
  StrataProbe probe;
};

}  // namespace

int main() {
  const CoxeterSystem a3(named_coxeter_matrix("A3"));
  const int jobs = std::max(1u, std::thread::hardware_concurrency());

  guarded(1, "non-pure strata poset", [&] {
    auto start = Clock::now();
    StrataPoset poset = strata_poset(a3, Word{1, 3, 2, 1, 3, 2}, product(a3, Word{1, 3, 2}));
    auto purity = purity_report(poset);
    const double secs = seconds_since(start);
    std::map<int, int> counts;
    for (int d : poset.dims) ++counts[d];
    std::vector<int> dims = purity.maximal_dims;
    std::sort(dims.begin(), dims.end());
    const bool ok = purity.maximal.size() == 2 && dims == std::vector<int>{1, 2} &&
                    counts == std::map<int, int>{{0, 5}, {1, 5}, {2, 1}} && !purity.pure && secs < 1.0;
    std::ostringstream os;
    os << counts[0] << "/" << counts[1] << "/" << counts[2] << " cells, " << purity.maximal.size()
       << " maximal of dims {" << (dims.empty() ? 0 : dims.front()) << "," << (dims.empty() ? 0 : dims.back()) << "}, "
       << secs << " s";
    report(1, "non-pure strata poset", ok, os.str());
  });

  guarded(2, "strata order complex acyclic", [&] {
    auto start = Clock::now();
    SweepSummary s = run_sweep(a3, {7, jobs});
    const double secs = seconds_since(start);
    std::size_t acyclic_failures = 0, dichotomy_failures = 0;
    for (const auto& f : s.failures) ++(f.check == "acyclic" ? acyclic_failures : dichotomy_failures);
    std::ostringstream os;
    os << s.words << " words, " << s.instances << " (Q,w) instances, " << acyclic_failures << " failures, " << jobs
       << " workers, " << secs << " s";
    report(2, "strata order complex acyclic", acyclic_failures == 0 && s.acyclic_ok == s.instances && secs < 600, os.str());
    std::ostringstream os3;
    os3 << s.sphere_ok << " spheres, " << s.ball_ok << " acyclic, " << dichotomy_failures << " failures";
    report(3, "ball/sphere dichotomy", dichotomy_failures == 0 && s.sphere_ok + s.ball_ok == s.instances, os3.str());
    std::size_t with_delta = 0;
    for (const auto& np : s.non_pure) with_delta += np.delta_is_w;
    std::printf("       purity experiment: %zu non-pure strata posets, %zu with delta(Q) = w\n", s.non_pure.size(), with_delta);
  });

  guarded(4, "braid identity", [&] {
    auto start = Clock::now();
    oracle::RandomRationals rnd(2024);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Generator i = rnd.uniform(1, 2);
      ParamWord pw(Word{i, i + 1, i}, rnd.positives(3, 50));
      auto moved = apply_move(pw, {1, MoveKind::Braid3, 0});
      auto back = apply_move(moved, {1, MoveKind::Braid3, 0});
      if (moved.word != Word{i + 1, i, i + 1} || evaluate(4, moved) != evaluate(4, pw) || back.word != pw.word ||
          back.params != pw.params) {
        ++bad;
      }
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << "1000 triples, " << bad << " failures, " << secs << " s";
    report(4, "braid identity", bad == 0 && secs < 5.0, os.str());
  });

  guarded(5, "factorization inverts evaluation", [&] {
    oracle::RandomRationals rnd(5);
    std::size_t words = 0, checks = 0, bad = 0;
    for (const Word& w : all_words(3, a3.length(a3.longest()))) {
      if (!is_reduced(a3, w)) continue;
      ++words;
      for (int k = 0; k < 100; ++k) {
        R t = rnd.positives(w.size());
        ++checks;
        if (factorize(evaluate(4, w, t), w) != t) ++bad;
      }
    }
    std::ostringstream os;
    os << words << " reduced words, " << checks << " vectors, " << bad << " failures";
    report(5, "factorization inverts evaluation", bad == 0 && words > 0, os.str());
  });

  guarded(6, "cell image law", [&] {
    oracle::RandomRationals rnd(6);
    std::size_t checks = 0, bad = 0;
    for (const Word& w : all_words(3, 7)) {
      for (int k = 0; k < 3; ++k) {
        ++checks;
        if (cell_of(a3, evaluate(4, w, rnd.positives(w.size()))).cell != demazure_product(a3, w)) ++bad;
      }
    }
    std::ostringstream os;
    os << checks << " evaluations over all words of length <= 7, " << bad << " failures";
    report(6, "cell image law", bad == 0, os.str());
  });

  TmaxAudit audit;
  const FiberOptions options{true, &audit};
  std::vector<Instance> corpus;
  guarded(7, "fiber stratification", [&] {
    auto start = Clock::now();
    oracle::RandomRationals rnd(7);
    std::size_t strata = 0, empty = 0, bad = 0, non_top = 0;
    for (int trial = 0; trial < 240; ++trial) {
      Word w = rnd.word(3, rnd.uniform(1, 7));
      R t = rnd.positives(w.size());
      for (auto& x : t)
        if (rnd.uniform(0, 4) == 0) x = 0;
      auto p = evaluate(4, w, t);
      try {
        StrataProbe probe = enumerate_strata(a3, w, p, options);
        bool ok = probe.poset_isomorphic_to_combinatorial &&
                  probe.strata.size() + probe.empty_certificates.size() == (std::size_t{1} << w.size());
        for (const auto& s : probe.strata)
          ok = ok && support_of(s.params) == s.stratum && evaluate(4, w, s.params) == p &&
               demazure_product(a3, w, s.stratum) == probe.target;
        for (const auto& c : probe.empty_certificates) ok = ok && demazure_product(a3, w, c.subset) != probe.target;
        if (!ok) ++bad;
        strata += probe.strata.size();
        empty += probe.empty_certificates.size();
        non_top += probe.target != demazure_product(a3, w);
        corpus.push_back({w, t, p, std::move(probe)});
      } catch (const Error& e) {
        ++bad;
        std::printf("       %s: %s\n", format_word(w).c_str(), e.what());
      }
    }
    const double secs = seconds_since(start);
    std::ostringstream os;
    os << corpus.size() << " instances (" << non_top << " in a smaller cell), " << strata << " witnesses, " << empty
       << " emptiness certificates, " << bad << " failures, " << secs << " s";
    report(7, "fiber stratification", bad == 0 && corpus.size() >= 200 && secs < 900, os.str());
  });

  guarded(8, "uniqueness dichotomy", [&] {
    oracle::RandomRationals rnd(8);
    std::size_t tested = 0, bad = 0;
    for (const auto& inst : corpus) {
      if (inst.probe.target != demazure_product(a3, inst.word)) continue;
      ++tested;
      auto ctx = FiberContext::full(a3, inst.word, inst.p, options);
      std::vector<R> samples;
      for (int k = 0; k < 20; ++k) {
        R u;
        for (int r = 0; r < ctx.free_dimension(); ++r) u.push_back(rnd.unit(97));
        samples.push_back(f_F(ctx, u));
      }
      auto constant = [&](std::size_t index) {
        return std::all_of(samples.begin(), samples.end(), [&](const R& s) { return s[index] == samples[0][index]; });
      };
      const int len = inst.word.length();
      const bool last_unique = !is_redundant(a3, inst.word, len);
      const bool first_unique = !is_redundant(a3, inst.word, 1);
      bool ok = constant(inst.word.size() - 1) == last_unique && constant(0) == first_unique;
      auto end = unique_end_value(a3, inst.p, inst.word);
      auto begin = unique_start_value(a3, inst.p, inst.word);
      ok = ok && end.has_value() == last_unique && begin.has_value() == first_unique;
      if (end) ok = ok && *end == samples[0].back();
      if (begin) ok = ok && *begin == samples[0].front();
      if (!ok) ++bad;
    }
    std::ostringstream os;
    os << tested << " instances with p in the cell of delta(word), 20 samples each, " << bad << " failures";
    report(8, "uniqueness dichotomy", bad == 0 && tested > 0, os.str());
  });

  guarded(9, "f_F roundtrip", [&] {
    oracle::RandomRationals rnd(9);
    std::size_t done = 0, bad = 0;
    for (std::size_t k = 0; done < 1000 && !corpus.empty(); ++k) {
      const auto& inst = corpus[k % corpus.size()];
      const auto& strata = inst.probe.strata;
      if (strata.empty()) continue;
      const auto& s = strata[static_cast<std::size_t>(rnd.uniform(0, static_cast<int>(strata.size()) - 1))];
      FiberContext ctx(a3, inst.word, inst.p, s.stratum, options, inst.probe.target);
      R u;
      for (int r = 0; r < ctx.free_dimension(); ++r) u.push_back(rnd.unit(997));
      ++done;
      if (f_F_inverse(ctx, f_F(ctx, u)) != u) ++bad;
    }
    std::ostringstream os;
    os << done << " roundtrips, " << bad << " failures";
    report(9, "f_F roundtrip", bad == 0 && done == 1000, os.str());
  });

  {
    std::ostringstream os;
    os << audit.calls << " t_max calls, " << audit.cross_checked << " cross-checked, " << audit.disagreements
       << " disagreements";
    report(10, "t_max two-path agreement",
           audit.calls > 0 && audit.cross_checked == audit.calls && audit.disagreements == 0, os.str());
  }

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
