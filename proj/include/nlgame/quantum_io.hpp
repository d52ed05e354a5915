#pragma once

// JSON formats for strategies and quantum independent sets.
//
// Strategy:
//   { "dA": int, "dB": int,
//     "state": [[re, im], ...],                       // length dA*dB, index i*dB + j
//     "alice": [ [M, M, ...], ... ],                  // alice[x][a]
//     "bob":   [ [M, M, ...], ... ] }                 // bob[y][b]
// where M is a row-major list of rows, each entry [re, im].
//
// Quantum independent set (projectors are real):
//   { "t": int, "d": int,
//     "measurements": [ [ {"vertex": [x, y, a, b], "matrix": R}, ... ], ... ] }
// where R is a list of rows of reals ([re, im] with im == 0 is also read).
// Vertices not listed in a measurement carry the zero matrix.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nlgame/game_graph.hpp"
#include "nlgame/json_util.hpp"
#include "nlgame/quantum.hpp"

namespace nlgame {

namespace detail {

using json_util::json;

inline Complex complex_from_json(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InvariantError(field, "entries must be numbers or [re, im] pairs");
}

inline CMatrix cmatrix_from_json(const json& v, std::size_t d, const std::string& field) {
  if (!v.is_array() || v.size() != d) throw InvariantError(field, "expected " + std::to_string(d) + " rows");
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!v[i].is_array() || v[i].size() != d) throw InvariantError(field, "expected " + std::to_string(d) + " columns");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = complex_from_json(v[i][j], field);
  }
  return m;
}

inline json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::size_t size_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() <= 0)
    throw InvariantError(key, "must be a positive integer");
  return static_cast<std::size_t>(doc[key].get<long long>());
}

inline std::vector<std::vector<CMatrix>> families_from_json(const json& v, std::size_t d, const std::string& field) {
  if (!v.is_array()) throw InvariantError(field, "must be an array of measurements");
  std::vector<std::vector<CMatrix>> out;
  for (std::size_t q = 0; q < v.size(); ++q) {
    const std::string f = field + "[" + std::to_string(q) + "]";
    if (!v[q].is_array()) throw InvariantError(f, "must be an array of matrices");
    std::vector<CMatrix> fam;
    for (const auto& m : v[q]) fam.push_back(cmatrix_from_json(m, d, f));
    out.push_back(std::move(fam));
  }
  return out;
}

}  // namespace detail

inline QuantumStrategy strategy_from_json(const json_util::json& doc) {
  if (!doc.is_object()) throw InvariantError("document", "strategy must be a JSON object");
  QuantumStrategy s;
  s.dA = detail::size_field(doc, "dA");
  s.dB = detail::size_field(doc, "dB");
  if (!doc.contains("state") || !doc["state"].is_array() || doc["state"].size() != s.dA * s.dB)
    throw InvariantError("state", "must list dA * dB amplitudes");
  for (const auto& z : doc["state"]) s.state.push_back(detail::complex_from_json(z, "state"));
  if (!doc.contains("alice") || !doc.contains("bob")) throw InvariantError("alice", "alice and bob are required");
  s.alice = detail::families_from_json(doc["alice"], s.dA, "alice");
  s.bob = detail::families_from_json(doc["bob"], s.dB, "bob");
  validate_strategy(s);
  return s;
}

inline QuantumStrategy parse_strategy(std::string_view text) { return strategy_from_json(json_util::parse(text)); }

inline json_util::json strategy_to_json(const QuantumStrategy& s) {
  using json = json_util::json;
  json doc;
  doc["dA"] = s.dA;
  doc["dB"] = s.dB;
  json state = json::array();
  for (const auto& z : s.state) state.push_back({z.real(), z.imag()});
  doc["state"] = std::move(state);
  const auto families = [](const std::vector<std::vector<CMatrix>>& fs) {
    json out = json::array();
    for (const auto& fam : fs) {
      json f = json::array();
      for (const auto& m : fam) f.push_back(detail::cmatrix_to_json(m));
      out.push_back(std::move(f));
    }
    return out;
  };
  doc["alice"] = families(s.alice);
  doc["bob"] = families(s.bob);
  return doc;
}

inline std::string serialize_strategy(const QuantumStrategy& s) { return json_util::dump(strategy_to_json(s)) + "\n"; }

/// Reads a QIS against a game graph; vertices are named by quadruple.
inline QuantumIndependentSet qis_from_json(const json_util::json& doc, const GameGraph& gg) {
  if (!doc.is_object()) throw InvariantError("document", "quantum independent set must be a JSON object");
  QuantumIndependentSet q;
  q.t = detail::size_field(doc, "t");
  q.d = detail::size_field(doc, "d");
  if (!doc.contains("measurements") || !doc["measurements"].is_array() || doc["measurements"].size() != q.t)
    throw InvariantError("measurements", "must list t measurements");
  q.projectors.assign(q.t, std::vector<Matrix>(gg.size(), Matrix(q.d, q.d)));
  for (std::size_t i = 0; i < q.t; ++i) {
    const std::string field = "measurements[" + std::to_string(i) + "]";
    const auto& m = doc["measurements"][i];
    if (!m.is_array()) throw InvariantError(field, "must be an array of elements");
    for (const auto& e : m) {
      if (!e.is_object() || !e.contains("vertex") || !e.contains("matrix"))
        throw InvariantError(field, "elements need vertex and matrix");
      const auto& v = e["vertex"];
      if (!v.is_array() || v.size() != 4) throw InvariantError(field, "vertex must be [x, y, a, b]");
      Quadruple quad{};
      std::size_t* parts[4] = {&quad.x, &quad.y, &quad.a, &quad.b};
      for (int p = 0; p < 4; ++p) {
        if (!v[p].is_number_integer() || v[p].get<long long>() < 0) throw InvariantError(field, "vertex entries must be non-negative integers");
        *parts[p] = static_cast<std::size_t>(v[p].get<long long>());
      }
      const auto idx = find_vertex(gg, quad);
      if (!idx) throw InvariantError(field, "vertex is not a winning quadruple of the game");
      const CMatrix c = detail::cmatrix_from_json(e["matrix"], q.d, field);
      if (c.max_abs_imag() != 0.0) throw InvariantError(field, "projectors must be real");
      q.projectors[i][*idx] = c.real();
    }
  }
  return q;
}

inline QuantumIndependentSet parse_qis(std::string_view text, const GameGraph& gg) {
  return qis_from_json(json_util::parse(text), gg);
}

/// Writes only the nonzero projectors.
inline json_util::json qis_to_json(const QuantumIndependentSet& q, const GameGraph& gg) {
  using json = json_util::json;
  json doc;
  doc["t"] = q.t;
  doc["d"] = q.d;
  json ms = json::array();
  for (std::size_t i = 0; i < q.t; ++i) {
    json m = json::array();
    for (std::size_t v = 0; v < gg.size(); ++v) {
      const Matrix& p = q.projectors[i][v];
      if (frobenius_norm(p) == 0.0) continue;
      const Quadruple& qv = gg.vertices[v];
      m.push_back({{"vertex", {qv.x, qv.y, qv.a, qv.b}}, {"matrix", detail::matrix_to_json(p)}});
    }
    ms.push_back(std::move(m));
  }
  doc["measurements"] = std::move(ms);
  return doc;
}

inline std::string serialize_qis(const QuantumIndependentSet& q, const GameGraph& gg) {
  return json_util::dump(qis_to_json(q, gg)) + "\n";
}

}  // namespace nlgame
