// tnnfibers: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "tnnfibers/tnnfibers.hpp"

namespace {

using namespace tnnfibers;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitBadInput = 2;

struct Args {
  std::string type;
  std::string word;
  std::string w;
  std::string to;
  std::string params;
  std::string matrix;
  std::string format;
  int jobs = 1;
  int max_len = 7;
};

CoxeterMatrix coxeter_from_type(const std::string& type) {
  if (type.size() > 5 && type.substr(type.size() - 5) == ".json") return coxeter_matrix_from_json(read_json_file(type));
  return named_coxeter_matrix(type);
}

bool want_json(const Args& a, bool json_default) {
  if (a.format.empty()) return json_default;
  if (a.format == "json") return true;
  if (a.format == "text") return false;
  throw Error(ErrorCode::BadInput, "--format must be json or text");
}

Word require_word(const CoxeterSystem& sys, const std::string& text, const char* flag) {
  Word word = parse_word(text);
  try {
    sys.require_valid(word);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadInput, std::string(flag) + ": " + e.what());
  }
  return word;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_group(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  std::map<int, std::size_t> by_length;
  for (std::size_t id = 0; id < sys.size(); ++id) ++by_length[sys.length(sys.element(id))];
  if (want_json(a, false)) {
    Json counts = Json::array();
    for (const auto& [len, c] : by_length) counts.push_back(c);
    print(Json{{"rank", sys.rank()},
               {"size", sys.size()},
               {"longest", sys.name(sys.longest())},
               {"longestLength", sys.length(sys.longest())},
               {"elementsByLength", counts}});
  } else {
    std::cout << "rank " << sys.rank() << ", order " << sys.size() << ", longest element " << sys.name(sys.longest())
              << " (length " << sys.length(sys.longest()) << ")\n";
  }
  return kExitOk;
}

int cmd_demazure(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  Word q = require_word(sys, a.word, "--word");
  Element d = demazure_product(sys, q);
  if (want_json(a, false)) {
    std::vector<int> redundant;
    for (int j = 1; j <= q.length(); ++j)
      if (is_redundant(sys, q, j)) redundant.push_back(j);
    print(Json{{"word", word_json(q)},
               {"demazure", sys.name(d)},
               {"length", sys.length(d)},
               {"reduced", is_reduced(sys, q)},
               {"redundantPositions", redundant}});
  } else {
    std::cout << sys.name(d) << " (length " << sys.length(d) << ")\n";
  }
  return kExitOk;
}

struct Instance {
  CoxeterSystem sys;
  Word q;
  Element w;
};

Instance load_instance(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  Word q = require_word(sys, a.word, "--word");
  if (q.length() > kMaxSubsetWord) throw Error(ErrorCode::BadInput, "--word is limited to 22 letters");
  Element w = a.w.empty() ? demazure_product(sys, q) : product(sys, require_word(sys, a.w, "--w"));
  if (!contains(sys, q, w)) throw Error(ErrorCode::BadInput, format_word(q) + " does not contain " + sys.name(w));
  return Instance{std::move(sys), std::move(q), w};
}

int cmd_subword_complex(const Args& a) {
  Instance in = load_instance(a);
  SimplicialComplex c = subword_complex(in.sys, in.q, in.w);
  HomologyReport h = reduced_homology(c);
  const bool delta_is_w = demazure_product(in.sys, in.q) == in.w;
  const int d = in.q.length() - in.sys.length(in.w) - 1;
  const bool ok = delta_is_w ? h.is_sphere(d) : h.acyclic();
  if (want_json(a, true)) {
    Json out{{"ambient", word_json(in.q)}, {"w", in.sys.name(in.w)}};
    out.update(complex_json(c));
    out["onlyEmptyFace"] = c.only_empty_face();
    out["homology"] = homology_json(h);
    out["expected"] = delta_is_w ? "sphere" : "ball";
    out["verdict"] = ok;
    print(out);
  } else {
    std::cout << "Δ(" << format_word(in.q) << ", " << in.sys.name(in.w) << "): " << c.facets.size() << " facets, dimension "
              << c.dimension() << (c.only_empty_face() ? " (only the empty face)" : "") << "\n";
    std::cout << (delta_is_w ? "sphere" : "ball") << " of dimension " << d << ": " << (ok ? "confirmed" : "FAILED") << "\n";
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_strata_poset(const Args& a) {
  Instance in = load_instance(a);
  StrataPoset poset = strata_poset(in.sys, in.q, in.w);
  const bool acyclic = reduced_homology(chain_faces(poset.order)).acyclic();
  if (want_json(a, true)) {
    Json out = strata_poset_json(in.sys, poset);
    out["orderComplexAcyclic"] = acyclic;
    print(out);
  } else {
    PurityReport purity = purity_report(poset);
    std::map<int, int> counts;
    for (int d : poset.dims) ++counts[d];
    std::cout << poset.elements.size() << " strata;";
    for (const auto& [d, c] : counts) std::cout << " dim " << d << ": " << c << ";";
    std::cout << " maximal dims";
    for (int d : purity.maximal_dims) std::cout << " " << d;
    std::cout << "; " << (purity.pure ? "pure" : "not pure") << "; order complex "
              << (acyclic ? "acyclic" : "NOT acyclic") << "\n";
  }
  return acyclic ? kExitOk : kExitVerification;
}

int cmd_homology(const Args& a) {
  Instance in = load_instance(a);
  HomologyReport delta = reduced_homology(subword_complex(in.sys, in.q, in.w));
  HomologyReport nabla = reduced_homology(chain_faces(strata_poset(in.sys, in.q, in.w).order));
  if (want_json(a, true)) {
    print(Json{{"subwordComplex", homology_json(delta)}, {"strataOrderComplex", homology_json(nabla)}});
  } else {
    auto show = [](const char* label, const HomologyReport& h) {
      std::cout << label << ":";
      for (const auto& [k, g] : h.groups) {
        if (g.is_zero()) continue;
        std::cout << " H~" << k << " = Z^" << g.betti;
        for (const auto& t : g.torsion) std::cout << " + Z/" << t.get_str();
      }
      if (h.acyclic()) std::cout << " acyclic";
      std::cout << "\n";
    };
    show("subword complex", delta);
    show("strata order complex", nabla);
  }
  return kExitOk;
}

int cmd_fiber_probe(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  Word q = require_word(sys, a.word, "--word");
  const int n = sys.rank() + 1;
  if (!is_type_a(sys, n)) throw Error(ErrorCode::BadInput, "fiber-probe needs a type A system");
  if (a.params.empty() == a.matrix.empty()) throw Error(ErrorCode::BadInput, "give exactly one of --params and --matrix");
  UnitriangularMatrix p = a.params.empty() ? matrix_from_json(read_json_file(a.matrix))
                                           : evaluate(n, q, parse_rationals(a.params));
  if (p.size() != n) throw Error(ErrorCode::BadInput, "matrix size does not match the group");
  for (const auto& x : a.params.empty() ? std::vector<Rational>{} : parse_rationals(a.params))
    if (x < 0) throw Error(ErrorCode::BadInput, "--params must be nonnegative");
  TmaxAudit audit;
  StrataProbe probe = enumerate_strata(sys, q, p, FiberOptions{true, &audit});
  if (want_json(a, true)) {
    Json out = probe_json(sys, probe);
    out["tmaxCalls"] = audit.calls;
    out["tmaxDisagreements"] = audit.disagreements;
    print(out);
  } else {
    std::cout << "p in the cell of " << sys.name(probe.target) << "; " << probe.strata.size() << " strata witnessed, "
              << probe.empty_certificates.size() << " subsets certified empty; poset "
              << (probe.poset_isomorphic_to_combinatorial ? "matches" : "DIFFERS") << "\n";
    for (const auto& s : probe.strata) {
      std::cout << "  {" << format_word(Word(positions_of(s.stratum))) << "} dim " << s.dim << ":";
      for (const auto& t : s.params) std::cout << " " << format_rational(t);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_braid_path(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  Word from = require_word(sys, a.word, "--word");
  Word to = require_word(sys, a.to, "--to");
  auto path = braid_path(sys, from, to);
  if (want_json(a, false)) {
    Json moves = Json::array(), words = Json::array({word_json(from)});
    Word cur = from;
    for (const auto& m : path) {
      moves.push_back(Json{{"pos", m.position}, {"m", braid_run_length(sys, cur, m.position)}});
      cur = apply_braid_move(sys, cur, m);
      words.push_back(word_json(cur));
    }
    print(Json{{"moves", moves}, {"words", words}});
  } else {
    Word cur = from;
    std::cout << format_word(cur) << "\n";
    for (const auto& m : path) {
      cur = apply_braid_move(sys, cur, m);
      std::cout << format_word(cur) << "  (" << (m.long_move ? "braid" : "commute") << " at " << m.position << ")\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(const Args& a) {
  CoxeterSystem sys(coxeter_from_type(a.type));
  SweepSummary s = run_sweep(sys, SweepOptions{a.max_len, a.jobs});
  std::size_t delta_w = 0, delta_w_right = 0, delta_w_left = 0;
  for (const auto& x : s.non_pure) {
    if (!x.delta_is_w) continue;
    ++delta_w;
    delta_w_right += x.weak_right_is_bruhat;
    delta_w_left += x.weak_left_is_bruhat;
  }
  if (want_json(a, false)) {
    Json failures = Json::array(), purity_cases = Json::array();
    for (const auto& f : s.failures) failures.push_back(Json{{"Q", word_json(f.q)}, {"w", sys.name(f.w)}, {"check", f.check}});
    for (const auto& x : s.non_pure) {
      if (!x.delta_is_w) continue;
      purity_cases.push_back(Json{{"Q", word_json(x.q)},
                                  {"w", sys.name(x.w)},
                                  {"maximalDims", x.maximal_dims},
                                  {"rightWeakEqualsBruhat", x.weak_right_is_bruhat},
                                  {"leftWeakEqualsBruhat", x.weak_left_is_bruhat}});
    }
    print(Json{{"maxLen", a.max_len},
               {"words", s.words},
               {"instances", s.instances},
               {"strataAcyclic", s.acyclic_ok},
               {"spheres", s.sphere_ok},
               {"balls", s.ball_ok},
               {"failures", failures},
               {"nonPure", s.non_pure.size()},
               {"nonPureWithDeltaW", purity_cases}});
  } else {
    std::cout << "words " << s.words << ", instances (Q, w) " << s.instances << "\n";
    std::cout << "strata order complexes acyclic: " << s.acyclic_ok << "/" << s.instances << "\n";
    std::cout << "subword complexes matching ball/sphere dichotomy: " << s.sphere_ok + s.ball_ok << "/" << s.instances << " ("
              << s.sphere_ok << " spheres, " << s.ball_ok << " balls)\n";
    std::cout << "non-pure strata posets: " << s.non_pure.size() << "; with δ(Q) = w: " << delta_w
              << " (right weak = Bruhat below w: " << delta_w_right << ", left weak = Bruhat below w: " << delta_w_left << ")\n";
    for (const auto& f : s.failures) std::cout << "FAILED " << f.check << ": Q = " << format_word(f.q) << ", w = " << sys.name(f.w) << "\n";
    std::cout << (s.passed() ? "all checks passed" : "verification FAILED") << "\n";
  }
  return s.passed() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Demazure products, subword complexes and fibers of totally nonnegative maps"};
  app.require_subcommand(1);
  Args args;
  std::string selected;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--type", args.type, "Coxeter type (A3, B4, D5, E6, F4, H3, I2:5, ...) or a JSON matrix file")->required();
    sub->add_option("--format", args.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->callback([&selected, name] { selected = name; });
    return sub;
  };
  add("group", "Order and longest element of the group");
  add("demazure", "Demazure product of a word")->add_option("--word", args.word, "word, e.g. 1,2,1,2")->required();
  for (const auto& name : {"subword-complex", "strata-poset", "homology"}) {
    CLI::App* sub = add(name, std::string(name == std::string("subword-complex") ? "Subword complex Δ(Q, w) with its ball/sphere verdict"
                                           : name == std::string("strata-poset") ? "Strata poset {P ⊆ Q : δ(P) = w}"
                                                                                 : "Reduced homology of Δ(Q, w) and of the strata order complex"));
    sub->add_option("--word", args.word, "the word Q")->required();
    sub->add_option("--w", args.w, "w as a word, read as an ordinary product (default: δ(Q))");
  }
  {
    CLI::App* sub = add("fiber-probe", "Witness every stratum of the fiber of f_Q over p");
    sub->add_option("--word", args.word, "the ambient word")->required();
    sub->add_option("--params", args.params, "p = f_Q(params), e.g. 1/6,1/6,1/6");
    sub->add_option("--matrix", args.matrix, "JSON file with p as rows of \"p/q\" strings");
  }
  {
    CLI::App* sub = add("braid-path", "Braid moves between two reduced words");
    sub->add_option("--word", args.word, "start word")->required();
    sub->add_option("--to", args.to, "target word")->required();
  }
  {
    CLI::App* sub = add("sweep", "Check acyclicity and the ball/sphere dichotomy for all short words");
    sub->add_option("--max-len", args.max_len, "longest word length")->check(CLI::Range(0, 22));
    sub->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  try {
    if (selected == "group") return cmd_group(args);
    if (selected == "demazure") return cmd_demazure(args);
    if (selected == "subword-complex") return cmd_subword_complex(args);
    if (selected == "strata-poset") return cmd_strata_poset(args);
    if (selected == "homology") return cmd_homology(args);
    if (selected == "fiber-probe") return cmd_fiber_probe(args);
    if (selected == "braid-path") return cmd_braid_path(args);
    if (selected == "sweep") return cmd_sweep(args);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.is_verification_failure() ? kExitVerification : kExitBadInput;
  }
  return kExitBadInput;
}
