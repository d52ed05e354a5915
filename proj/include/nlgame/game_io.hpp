#pragma once

// Game file format (JSON):
//
//   { "name": str, "nx": int, "ny": int, "na": int, "nb": int,
//     "predicate": {"winning": [[x,y,a,b], ...]} | {"dsl": str} | {"table": [reals]},
//     "distribution": "uniform" | [reals] }
//
// Tables are flat and row-major in (x, y, a, b) and (x, y). A missing
// distribution means uniform.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/json_util.hpp"
#include "nlgame/predicate_dsl.hpp"

namespace nlgame {

namespace detail {

inline std::size_t positive_size(const json_util::json& doc, const char* key) {
  if (!doc.contains(key)) throw InvariantError(key, "missing");
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) throw InvariantError(key, "must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

inline std::vector<double> real_array(const json_util::json& v, const std::string& field) {
  if (!v.is_array()) throw InvariantError(field, "must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw InvariantError(field, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace detail

/// Builds a game from a parsed JSON document.
inline Game game_from_json(const json_util::json& doc) {
  using json = json_util::json;
  if (!doc.is_object()) throw InvariantError("document", "game must be a JSON object");
  const std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "game";
  const std::size_t nx = detail::positive_size(doc, "nx"), ny = detail::positive_size(doc, "ny"),
                    na = detail::positive_size(doc, "na"), nb = detail::positive_size(doc, "nb");

  if (!doc.contains("predicate") || !doc["predicate"].is_object()) throw InvariantError("predicate", "missing");
  const json& p = doc["predicate"];
  std::vector<double> table;
  if (p.contains("winning")) {
    table.assign(nx * ny * na * nb, 0.0);
    if (!p["winning"].is_array()) throw InvariantError("predicate.winning", "must be an array of [x,y,a,b]");
    for (const auto& q : p["winning"]) {
      if (!q.is_array() || q.size() != 4) throw InvariantError("predicate.winning", "entries must be [x,y,a,b]");
      std::size_t idx[4];
      const std::size_t lim[4] = {nx, ny, na, nb};
      for (int i = 0; i < 4; ++i) {
        if (!q[i].is_number_integer() || q[i].get<long long>() < 0 ||
            static_cast<std::size_t>(q[i].get<long long>()) >= lim[i])
          throw InvariantError("predicate.winning", "quadruple entry out of range");
        idx[i] = static_cast<std::size_t>(q[i].get<long long>());
      }
      table[((idx[0] * ny + idx[1]) * na + idx[2]) * nb + idx[3]] = 1.0;
    }
  } else if (p.contains("dsl")) {
    if (!p["dsl"].is_string()) throw InvariantError("predicate.dsl", "must be a string");
    table = dsl::predicate_table(p["dsl"].get<std::string>(), nx, ny, na, nb);
  } else if (p.contains("table")) {
    table = detail::real_array(p["table"], "predicate.table");
  } else {
    throw InvariantError("predicate", "expected one of winning, dsl, table");
  }

  std::vector<double> dist;
  if (!doc.contains("distribution") ||
      (doc["distribution"].is_string() && doc["distribution"].get<std::string>() == "uniform")) {
    dist = Game::uniform_distribution(nx, ny);
  } else if (doc["distribution"].is_array()) {
    dist = detail::real_array(doc["distribution"], "distribution");
  } else {
    throw InvariantError("distribution", "must be \"uniform\" or an array");
  }
  return Game(name, nx, ny, na, nb, std::move(table), std::move(dist));
}

/// Parses a game document. Syntax errors carry line/column; invariant
/// violations name the offending field.
inline Game parse_game(std::string_view text) { return game_from_json(json_util::parse(text)); }

inline json_util::json game_to_json(const Game& g) {
  using json = json_util::json;
  json doc;
  doc["name"] = g.name();
  doc["nx"] = g.nx();
  doc["ny"] = g.ny();
  doc["na"] = g.na();
  doc["nb"] = g.nb();
  if (g.is_boolean()) {
    json winning = json::array();
    for (std::size_t x = 0; x < g.nx(); ++x)
      for (std::size_t y = 0; y < g.ny(); ++y)
        for (std::size_t a = 0; a < g.na(); ++a)
          for (std::size_t b = 0; b < g.nb(); ++b)
            if (g.lambda(x, y, a, b) == 1.0) winning.push_back({x, y, a, b});
    doc["predicate"] = {{"winning", winning}};
  } else {
    doc["predicate"] = {{"table", g.predicate()}};
  }
  const auto uniform = Game::uniform_distribution(g.nx(), g.ny());
  if (g.distribution() == uniform)
    doc["distribution"] = "uniform";
  else
    doc["distribution"] = g.distribution();
  return doc;
}

/// Serializes a game so that parse_game reproduces its tables bit for bit.
inline std::string serialize_game(const Game& g) { return json_util::dump(game_to_json(g)) + "\n"; }

}  // namespace nlgame
