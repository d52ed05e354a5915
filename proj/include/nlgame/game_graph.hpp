#pragma once

// Game graphs: one vertex per winning quadruple (x, y, a, b); two vertices are
// adjacent when they share x with different a, or share y with different b.
// The weighted variant labels each vertex with lambda(x,y,a,b) * pi(x,y).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/graph.hpp"
#include "nlgame/json_util.hpp"

namespace nlgame {

struct GameGraph {
  std::vector<Quadruple> vertices;      // lexicographic (x, y, a, b)
  Graph graph;                          // adjacency over vertex indices
  std::optional<std::vector<double>> weights;
  std::size_t source_k = 0;             // |X x Y| of the game it came from

  std::size_t size() const noexcept { return vertices.size(); }
};

/// Whether two quadruples are inconsistent answers: same x with different a,
/// or same y with different b.
inline bool inconsistent(const Quadruple& u, const Quadruple& v) {
  return (u.x == v.x && u.a != v.a) || (u.y == v.y && u.b != v.b);
}

namespace detail {

// Edges are generated per shared question rather than by testing all pairs:
// vertices are grouped by x (and by y), and within a group every pair with
// different answers is joined.
inline Graph connect(const std::vector<Quadruple>& vs, std::size_t nx, std::size_t ny) {
  Graph g(vs.size());
  std::vector<std::vector<std::size_t>> by_x(nx), by_y(ny);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    by_x[vs[i].x].push_back(i);
    by_y[vs[i].y].push_back(i);
  }
  for (const auto& group : by_x)
    for (std::size_t p = 0; p < group.size(); ++p)
      for (std::size_t q = p + 1; q < group.size(); ++q)
        if (vs[group[p]].a != vs[group[q]].a) g.add_edge(group[p], group[q]);
  for (const auto& group : by_y)
    for (std::size_t p = 0; p < group.size(); ++p)
      for (std::size_t q = p + 1; q < group.size(); ++q)
        if (vs[group[p]].b != vs[group[q]].b) g.add_edge(group[p], group[q]);
  return g;
}

}  // namespace detail

/// Game graph of a 0/1 game. Throws InvariantError on fractional predicates.
inline GameGraph build_game_graph(const Game& g) {
  if (!g.is_boolean()) throw InvariantError("predicate", "game graph needs a 0/1 predicate; use the weighted builder");
  GameGraph gg;
  gg.source_k = g.k();
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      for (std::size_t a = 0; a < g.na(); ++a)
        for (std::size_t b = 0; b < g.nb(); ++b)
          if (g.lambda(x, y, a, b) == 1.0) gg.vertices.push_back({x, y, a, b});
  gg.graph = detail::connect(gg.vertices, g.nx(), g.ny());
  return gg;
}

/// Weighted game graph; quadruples with lambda * pi == 0 are left out.
inline GameGraph build_weighted_game_graph(const Game& g) {
  GameGraph gg;
  gg.source_k = g.k();
  std::vector<double> w;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      for (std::size_t a = 0; a < g.na(); ++a)
        for (std::size_t b = 0; b < g.nb(); ++b) {
          const double weight = g.lambda(x, y, a, b) * g.pi(x, y);
          if (weight > 0.0) {
            gg.vertices.push_back({x, y, a, b});
            w.push_back(weight);
          }
        }
  gg.graph = detail::connect(gg.vertices, g.nx(), g.ny());
  gg.weights = std::move(w);
  return gg;
}

inline Graph to_plain_graph(const GameGraph& gg) { return gg.graph; }

/// Index of a quadruple in the vertex list, if present.
inline std::optional<std::size_t> find_vertex(const GameGraph& gg, const Quadruple& q) {
  auto it = std::lower_bound(gg.vertices.begin(), gg.vertices.end(), q);
  if (it == gg.vertices.end() || *it != q) return std::nullopt;
  return static_cast<std::size_t>(it - gg.vertices.begin());
}

/// DIMACS edge list: "p edge n m" followed by "e i j" lines with 1-based
/// vertex numbers.
inline std::string to_dimacs(const Graph& g, const std::string& comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << "\n";
  out << "p edge " << g.size() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << (u + 1) << " " << (v + 1) << "\n";
  return out.str();
}

/// Reads a DIMACS edge list. Comment lines start with 'c'.
inline Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Graph> g;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string fmt;
      std::size_t n = 0, m = 0;
      if (!(ls >> fmt >> n >> m)) throw ParseError("malformed problem line", lineno, 1);
      g.emplace(n);
    } else if (tag == "e") {
      std::size_t u = 0, v = 0;
      if (!g || !(ls >> u >> v) || u == 0 || v == 0 || u > g->size() || v > g->size())
        throw ParseError("malformed edge line", lineno, 1);
      g->add_edge(u - 1, v - 1);
    } else {
      throw ParseError("unknown line type '" + tag + "'", lineno, 1);
    }
  }
  if (!g) throw ParseError("missing problem line", 0, 0);
  return *std::move(g);
}

/// Sidecar describing what each DIMACS vertex number stands for.
inline json_util::json game_graph_sidecar(const GameGraph& gg) {
  using json = json_util::json;
  json vs = json::array();
  for (std::size_t i = 0; i < gg.size(); ++i) {
    json v = {{"index", i + 1},
              {"quadruple", {gg.vertices[i].x, gg.vertices[i].y, gg.vertices[i].a, gg.vertices[i].b}}};
    if (gg.weights) v["weight"] = (*gg.weights)[i];
    vs.push_back(std::move(v));
  }
  return {{"k", gg.source_k},
          {"vertex_count", gg.size()},
          {"edge_count", gg.graph.edge_count()},
          {"encoding", "quadruple order (x, y, a, b); indices 1-based as in the edge list"},
          {"vertices", std::move(vs)}};
}

}  // namespace nlgame
