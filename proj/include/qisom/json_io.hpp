// Copyright 2026 The qisom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON encodings. Complex numbers are [re, im] pairs; every report carries
// "schema": 1 at top level (added by the caller).
//
// q-matrix files: {"n": 2, "q": [[[re, im], ...], ...], "mode": "isometric"}
// where "mode" is optional and may be "general" to allow a real diagonal.

#ifndef QISOM_JSON_IO_HPP
#define QISOM_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qisom/bratteli.hpp"
#include "qisom/fock.hpp"
#include "qisom/gicar.hpp"
#include "qisom/ideal.hpp"
#include "qisom/qmatrix.hpp"
#include "qisom/rep.hpp"
#include "qisom/symmetry.hpp"

namespace qisom {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const OccVector& v) { return Json(v.entries()); }
inline Json to_json(const MultiIndex& mu) { return Json(std::vector<int>(mu)); }

inline Json to_json(const QMatrix& q) {
  Json rows = Json::array();
  for (int i = 1; i <= static_cast<int>(q.n()); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= static_cast<int>(q.n()); ++j) row.push_back(to_json(q(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", q.n()}, {"q", rows}, {"mode", q.isom_mode() ? "isometric" : "general"}};
}

namespace detail {

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("entry " + where + " must be a number or a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

/// Parses and validates a q-matrix document. Shape errors raise ParseError;
/// violated invariants raise InvalidQMatrix naming the invariant.
inline QMatrix qmatrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("q-matrix document must be a JSON object");
  if (!doc.contains("q")) throw ParseError("q-matrix document lacks the \"q\" field");
  const Json& rows = doc["q"];
  if (!rows.is_array() || rows.empty()) throw ParseError("\"q\" must be a non-empty array of rows");
  const std::size_t n = rows.size();
  if (doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n)))
    throw ParseError("\"n\" = " + doc["n"].dump() + " disagrees with " + std::to_string(n) + " rows in \"q\"");
  QMatrix::Mode mode = QMatrix::Mode::Isometric;
  if (doc.contains("mode")) {
    const Json& m = doc["mode"];
    if (m == "general") mode = QMatrix::Mode::General;
    else if (m != "isometric") throw ParseError("\"mode\" must be \"isometric\" or \"general\"");
  }
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw InvalidQMatrix(QMatrix::kShape, "row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      entries.push_back(detail::complex_from_json(rows[i][j], "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"));
  }
  return QMatrix(n, std::move(entries), mode);
}

inline QMatrix load_qmatrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open q-matrix file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return qmatrix_from_json(doc);
}

/// Unitary matrix file: {"u": [[[re, im], ...], ...]}.
inline CMatrix matrix_from_json(const Json& doc, const std::string& field) {
  if (!doc.is_object() || !doc.contains(field) || !doc[field].is_array() || doc[field].empty())
    throw ParseError("document lacks a non-empty \"" + field + "\" matrix");
  const Json& rows = doc[field];
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!rows[static_cast<std::size_t>(i)].is_array() || static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw ParseError("\"" + field + "\" must be square");
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = detail::complex_from_json(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                          "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  return m;
}

inline Json to_json(const Expression& x) {
  Json terms = Json::array();
  for (const auto& [key, c] : x.terms())
    terms.push_back(Json{{"coefficient", to_json(c)}, {"mu", to_json(key.first)}, {"sigma", to_json(key.second)}});
  return terms;
}

inline Json to_json(const GramBlock& g) {
  Json basis = Json::array();
  for (const auto& b : g.basis) basis.push_back(to_json(b));
  Json out{{"v", to_json(g.v)}, {"basis", basis}, {"gram", to_json(g.gram)}, {"positive", g.positive()},
           {"determinant", g.determinant()}, {"min_pivot", g.min_pivot}};
  if (g.positive()) out["c"] = to_json(orthonormalize(g));
  return out;
}

inline Json to_json(const RelationReport& r) {
  const auto list = [](const std::vector<RelationResidual>& rs) {
    Json a = Json::array();
    for (const auto& x : rs) a.push_back(Json{{"i", x.i}, {"j", x.j}, {"residual", x.norm}});
    return a;
  };
  return Json{{"L", r.L},
              {"checked_up_to_level", r.checked_up_to_level},
              {"twisted", list(r.twisted)},
              {"isometry", list(r.isometry)},
              {"worst", r.worst},
              {"top_level_isometry_defect", r.top_level_isometry_defect},
              {"note", r.note}};
}

inline Json to_json(const DecompositionReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json checks = Json::object();
    for (const auto& [name, ok] : b.checks) checks[name] = ok;
    Json residuals = Json::object();
    for (const auto& [name, x] : b.residuals) residuals[name] = x;
    blocks.push_back(Json{{"v", to_json(b.v)},
                          {"dim", b.dim},
                          {"algebra_dim", b.algebra_dim},
                          {"unit_rank", b.unit_rank},
                          {"checks", checks},
                          {"residuals", residuals}});
  }
  Json checks = Json::object();
  for (const auto& [name, ok] : r.checks) checks[name] = ok;
  Json residuals = Json::object();
  for (const auto& [name, x] : r.residuals) residuals[name] = x;
  return Json{{"k", r.k},
              {"n", r.n},
              {"blocks", blocks},
              {"total_dim", r.total_dim},
              {"represented_rank", r.represented_rank},
              {"checks", checks},
              {"residuals", residuals},
              {"passed", r.passed()}};
}

inline Json to_json(const BratteliDiagram& d) {
  Json nodes = Json::array();
  for (const auto& node : d.nodes) nodes.push_back(Json{{"k", node.k}, {"v", to_json(node.v)}, {"dim", node.dim}});
  Json edges = Json::array();
  for (const auto& e : d.edges) edges.push_back(Json{{"k", e.k}, {"v", to_json(e.v)}, {"u", to_json(e.u)}, {"m", e.m}});
  Json fills = Json::array();
  for (const auto& f : d.fills)
    fills.push_back(Json{{"k", f.k}, {"u", to_json(f.u)}, {"received", f.received}, {"dim", f.dim}, {"unital", f.unital()}});
  return Json{{"n", d.n}, {"k_max", d.k_max}, {"nodes", nodes}, {"edges", edges}, {"fills", fills}};
}

inline Json to_json(const MembershipResult& r) {
  Json out{{"passed", r.passed}, {"worst", r.worst}};
  out["witness"] = r.witness ? Json(std::vector<int>(r.witness->begin(), r.witness->end())) : Json(nullptr);
  return out;
}

inline Json to_json(const GroupAxiomReport& r) {
  return Json{{"trials", r.trials},
              {"passing", r.passing},
              {"closure_checked", r.closure_checked},
              {"closure_failures", r.closure_failures},
              {"inverse_failures", r.inverse_failures},
              {"distinct_diagonal", r.distinct_diagonal},
              {"nondiagonal_checked", r.nondiagonal_checked},
              {"nondiagonal_passed", r.nondiagonal_passed},
              {"ok", r.ok()}};
}

inline Json to_json(const IdealReport& r) {
  return Json{{"L", r.L},
              {"max_len", r.max_len},
              {"dim", r.dim},
              {"rank_p", r.rank_p},
              {"spectral_gap", r.spectral_gap},
              {"words", r.words},
              {"units", r.units},
              {"span_rank", r.span_rank},
              {"rank_one_failures", r.rank_one_failures},
              {"worst_residuals",
               Json{{"p_projection", r.p_projection},
                    {"p_kills_creation", r.p_kills_creation},
                    {"annihilation_kills_p", r.annihilation_kills_p},
                    {"one_b_plus_p", r.one_b_plus_p},
                    {"product", r.product},
                    {"adjoint", r.adjoint},
                    {"diagonal_projection", r.diagonal_projection},
                    {"orthogonality_same_occ", r.orthogonality_same_occ},
                    {"orthogonality_diff_occ", r.orthogonality_diff_occ}}},
              {"passed", r.passed()}};
}

/// Prepends the schema field.
inline Json with_schema(const Json& body) {
  Json out{{"schema", kSchemaVersion}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

}  // namespace qisom

#endif  // QISOM_JSON_IO_HPP
