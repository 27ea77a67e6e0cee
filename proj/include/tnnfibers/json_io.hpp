#pragma once

// JSON encodings. Words and position sets are arrays of 1-based integers,
// rationals are "p/q" strings, matrices nested arrays of rationals.

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "tnnfibers/complexes.hpp"
#include "tnnfibers/fiber.hpp"
#include "tnnfibers/homology.hpp"
#include "tnnfibers/rewrite.hpp"
#include "tnnfibers/tnn.hpp"

namespace tnnfibers {

using Json = nlohmann::ordered_json;

inline Json word_json(const Word& word) { return Json(word.letters()); }
inline Json position_set_json(PositionSet set) { return Json(positions_of(set)); }
inline Json rational_json(const Rational& r) { return format_rational(r); }

inline Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(format_rational(v));
  return out;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::BadInput, "rationals must be \"p/q\" strings or integers");
}

inline Json matrix_json(const UnitriangularMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.rows()) out.push_back(rationals_json(row));
  return out;
}

inline UnitriangularMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::BadInput, "matrix must be an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::BadInput, "matrix rows must be arrays");
    std::vector<Rational> values;
    for (const auto& x : row) values.push_back(rational_from_json(x));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(ErrorCode::BadInput, "empty matrix");
  return UnitriangularMatrix::from_rows(rows);
}

/// Explicit Coxeter matrix: rows of integers, bare or under "matrix".
inline CoxeterMatrix coxeter_matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("matrix") : j;
  if (!rows.is_array()) throw Error(ErrorCode::BadInput, "Coxeter matrix must be an array of integer rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : rows) {
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::BadInput, "Coxeter matrix entries must be integers");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return CoxeterMatrix(std::move(out));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, path + ": " + e.what());
  }
}

inline Json move_json(const Move& m) {
  Json out{{"pos", m.pos}, {"kind", std::string(to_string(m.kind))}};
  if (m.kind == MoveKind::NilSplit) out["a"] = format_rational(m.a);
  return out;
}

inline Move move_from_json(const Json& j) {
  Move m;
  m.pos = j.at("pos").get<int>();
  m.kind = parse_move_kind(j.at("kind").get<std::string>());
  if (j.contains("a")) m.a = rational_from_json(j.at("a"));
  return m;
}

inline Json complex_json(const SimplicialComplex& c) {
  Json facets = Json::array();
  for (const auto& f : c.facets) {
    Json face = Json::array();
    for (int v : f) face.push_back(c.vertex_labels[static_cast<std::size_t>(v)]);
    facets.push_back(face);
  }
  return Json{{"dimension", c.dimension()}, {"facets", facets}};
}

/// {"-1": [betti, torsion...], "0": [...], ...}
inline Json homology_json(const HomologyReport& report) {
  Json out = Json::object();
  for (const auto& [k, g] : report.groups) {
    Json entry = Json::array({g.betti});
    for (const auto& t : g.torsion) entry.push_back(t.get_str());
    out[std::to_string(k)] = entry;
  }
  return out;
}

inline Json poset_json(const StrataPoset& poset) {
  Json elements = Json::array(), covers = Json::array();
  for (PositionSet p : poset.elements) elements.push_back(position_set_json(p));
  for (const auto& [a, b] : poset.order.covers()) covers.push_back(Json::array({a, b}));
  return Json{{"elements", elements}, {"covers", covers}, {"dims", poset.dims}};
}

inline Json strata_poset_json(const CoxeterSystem& sys, const StrataPoset& poset) {
  Json out{{"ambient", word_json(poset.ambient)}, {"w", sys.name(poset.target)}};
  out.update(poset_json(poset));
  PurityReport purity = purity_report(poset);
  std::map<int, int> counts;
  for (int d : poset.dims) ++counts[d];
  Json by_dim = Json::object();
  for (const auto& [d, c] : counts) by_dim[std::to_string(d)] = c;
  Json maximal = Json::array();
  for (PositionSet p : purity.maximal) maximal.push_back(position_set_json(p));
  out["countsByDim"] = by_dim;
  out["maximal"] = maximal;
  out["maximalDims"] = purity.maximal_dims;
  out["pure"] = purity.pure;
  return out;
}

inline Json probe_json(const CoxeterSystem& sys, const StrataProbe& probe) {
  Json strata = Json::array(), empty = Json::array();
  for (const auto& s : probe.strata) {
    strata.push_back(Json{{"P", position_set_json(s.stratum)}, {"dim", s.dim}, {"u", rationals_json(s.u)},
                          {"witness", rationals_json(s.params)}});
  }
  for (const auto& c : probe.empty_certificates) {
    empty.push_back(Json{{"P", position_set_json(c.subset)}, {"cell", sys.name(c.cell)}});
  }
  return Json{{"ambient", word_json(probe.ambient)},
              {"w", sys.name(probe.target)},
              {"p", matrix_json(probe.point)},
              {"strata", strata},
              {"emptyCertificates", empty},
              {"posetIsomorphicToCombinatorial", probe.poset_isomorphic_to_combinatorial}};
}

}  // namespace tnnfibers
