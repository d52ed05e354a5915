#pragma once

// The analysis pipeline (game -> game graph -> alpha -> theta) and its text
// and JSON reports.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/game_graph.hpp"
#include "nlgame/independence.hpp"
#include "nlgame/json_util.hpp"
#include "nlgame/sdp.hpp"

namespace nlgame {

struct AnalyzeOptions {
  double tol = 1e-7;
  bool force_weighted = false;
  std::size_t max_vertices = kDefaultVertexCap;
  std::size_t repetitions = 1;  // recorded only; the caller builds the repeated game
  std::uint64_t max_iterations = 200000;
};

struct StageTimings {
  double graph_ms = 0.0;
  double alpha_ms = 0.0;
  double theta_ms = 0.0;
  double xor_ms = 0.0;
};

struct AnalysisReport {
  std::string name;
  std::size_t nx = 0, ny = 0, na = 0, nb = 0, k = 0;
  std::size_t repetitions = 1;
  bool weighted = false;
  double tol = 0.0;

  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;

  std::optional<std::size_t> alpha;     // unweighted pipeline only
  double independent_set_value = 0.0;   // alpha or total weight
  std::vector<Quadruple> witness;
  ClassicalStrategy strategy;
  double omega_classical = 0.0;

  ThetaResult theta;                     // primal_matrix dropped after analysis
  double theta_over_k = 0.0;             // certified: dual bound times the scale
  std::optional<XorValue> xor_value;

  bool bell_gap_certificate = false;
  bool solver_failure = false;
  StageTimings timings;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

/// Runs the pipeline. The weighted path is taken for non-uniform
/// distributions, fractional predicates, or when forced.
inline AnalysisReport analyze(const Game& g, const AnalyzeOptions& o = {}) {
  using clock = std::chrono::steady_clock;
  AnalysisReport r;
  r.name = g.name();
  r.nx = g.nx();
  r.ny = g.ny();
  r.na = g.na();
  r.nb = g.nb();
  r.k = g.k();
  r.repetitions = o.repetitions;
  r.tol = o.tol;
  r.weighted = o.force_weighted || !g.is_uniform() || !g.is_boolean();

  auto t0 = clock::now();
  const GameGraph gg = r.weighted ? build_weighted_game_graph(g) : build_game_graph(g);
  r.timings.graph_ms = detail::elapsed_ms(t0);
  r.vertex_count = gg.size();
  r.edge_count = gg.graph.edge_count();

  t0 = clock::now();
  const std::vector<double> weights = r.weighted ? *gg.weights : std::vector<double>(gg.size(), 1.0);
  const IndependenceResult mis = weighted_independence(gg.graph, weights, o.max_vertices);
  r.timings.alpha_ms = detail::elapsed_ms(t0);
  r.independent_set_value = r.weighted ? mis.value : static_cast<double>(mis.witness.size());
  if (!r.weighted) r.alpha = mis.witness.size();
  for (std::size_t v : mis.witness) r.witness.push_back(gg.vertices[v]);
  r.strategy = strategy_from_independent_set(g, gg, mis.witness);
  r.omega_classical = r.weighted ? mis.value : static_cast<double>(mis.witness.size()) / static_cast<double>(g.k());

  const double scale = r.weighted ? 1.0 : 1.0 / static_cast<double>(g.k());
  t0 = clock::now();
  if (gg.size() > 0) {
    r.theta = weighted_theta(gg.graph, weights, SdpOptions{o.tol, o.max_iterations, 1.0});
    r.theta.primal_matrix = SymMatrix();
  } else {
    r.theta.converged = true;
  }
  r.timings.theta_ms = detail::elapsed_ms(t0);
  r.theta_over_k = r.theta.dual_bound * scale;

  if (is_xor_game(g)) {
    t0 = clock::now();
    r.xor_value = xor_tsirelson(g);
    r.xor_value->certificate.primal_matrix = SymMatrix();
    r.timings.xor_ms = detail::elapsed_ms(t0);
  }

  const double margin = 10.0 * o.tol;
  r.solver_failure = !r.theta.converged || r.omega_classical > r.theta_over_k + margin;
  r.bell_gap_certificate = r.theta.converged && r.theta_over_k > r.omega_classical + margin;
  return r;
}

inline json_util::json report_to_json(const AnalysisReport& r, bool with_timings = false) {
  using json = json_util::json;
  json doc;
  doc["game"] = {{"name", r.name}, {"nx", r.nx}, {"ny", r.ny}, {"na", r.na}, {"nb", r.nb}, {"k", r.k},
                 {"repetitions", r.repetitions}};
  doc["index_encoding"] = r.repetitions > 1
                              ? "row-major mixed radix over the repeated coordinates, first coordinate most significant"
                              : "0-based indices";
  doc["pipeline"] = r.weighted ? "weighted" : "unweighted";
  doc["tol"] = r.tol;
  doc["graph"] = {{"vertices", r.vertex_count}, {"edges", r.edge_count}};
  doc["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
  doc["independent_set_value"] = r.independent_set_value;
  json w = json::array();
  for (const auto& q : r.witness) w.push_back({q.x, q.y, q.a, q.b});
  doc["witness"] = std::move(w);
  doc["strategy"] = {{"alice", r.strategy.alice}, {"bob", r.strategy.bob}};
  doc["omega_classical"] = r.omega_classical;

  json theta = {{"dual_bound", r.theta.dual_bound},
                {"gap", r.theta.gap},
                {"iterations", r.theta.iterations},
                {"converged", r.theta.converged},
                {"primal_residual", r.theta.primal_residual},
                {"dual_residual", r.theta.dual_residual}};
  // An unconverged primal value is not a certified theta.
  theta["value"] = r.theta.converged ? json(r.theta.value) : json(nullptr);
  doc["theta"] = std::move(theta);
  doc["theta_over_k"] = r.theta_over_k;
  doc["bound_ratio"] = r.omega_classical > 0.0 ? json(r.theta_over_k / r.omega_classical) : json(nullptr);
  if (r.xor_value)
    doc["xor_value"] = {{"value", r.xor_value->value},
                        {"upper", r.xor_value->upper},
                        {"converged", r.xor_value->certificate.converged}};
  else
    doc["xor_value"] = nullptr;
  doc["bell_gap_certificate"] = r.bell_gap_certificate;
  doc["solver_failure"] = r.solver_failure;
  if (with_timings)
    doc["timings_ms"] = {{"graph", r.timings.graph_ms},
                         {"alpha", r.timings.alpha_ms},
                         {"theta", r.timings.theta_ms},
                         {"xor", r.timings.xor_ms}};
  return doc;
}

namespace detail {

inline std::string fmt(double v, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace detail

inline std::string report_to_text(const AnalysisReport& r, bool with_timings = false) {
  using detail::fmt;
  std::string out;
  const auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out.append(key.size() < 16 ? 16 - key.size() : 1, ' ');
    out += value;
    out += '\n';
  };
  const auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };

  line("game", r.name);
  line("sizes", "nx=" + std::to_string(r.nx) + " ny=" + std::to_string(r.ny) + " na=" + std::to_string(r.na) +
                    " nb=" + std::to_string(r.nb) + " k=" + std::to_string(r.k));
  if (r.repetitions > 1) line("repetitions", std::to_string(r.repetitions) + " (mixed radix, first coordinate most significant)");
  line("pipeline", r.weighted ? "weighted" : "unweighted");
  line("graph", "|V|=" + std::to_string(r.vertex_count) + " |E|=" + std::to_string(r.edge_count));
  if (r.alpha)
    line("alpha", std::to_string(*r.alpha));
  else
    line("mwis", fmt(r.independent_set_value, 17));
  std::string w;
  for (const auto& q : r.witness)
    w += (w.empty() ? "" : " ") + ("(" + std::to_string(q.x) + "," + std::to_string(q.y) + "," + std::to_string(q.a) +
                                   "," + std::to_string(q.b) + ")");
  line("witness", w.empty() ? "-" : w);
  line("strategy", "alice=" + list(r.strategy.alice) + " bob=" + list(r.strategy.bob));
  line("omega", fmt(r.omega_classical, 17));
  if (r.theta.converged)
    line("theta", fmt(r.theta.value) + " (dual " + fmt(r.theta.dual_bound) + ", gap " + fmt(r.theta.gap, 3) + ", " +
                      std::to_string(r.theta.iterations) + " iterations)");
  else
    line("theta", "not converged after " + std::to_string(r.theta.iterations) + " iterations; dual bound " +
                      fmt(r.theta.dual_bound));
  line(r.weighted ? "theta_w" : "theta/k", fmt(r.theta_over_k));
  if (r.omega_classical > 0.0) line("bound ratio", fmt(r.theta_over_k / r.omega_classical));
  if (r.xor_value) line("xor value", fmt(r.xor_value->value) + " (upper " + fmt(r.xor_value->upper) + ")");
  line("bell gap", r.bell_gap_certificate ? "yes" : "no");
  if (r.solver_failure) line("solver", "FAILURE (unconverged or omega above the bound)");
  if (with_timings)
    line("timings ms", "graph " + fmt(r.timings.graph_ms, 4) + ", alpha " + fmt(r.timings.alpha_ms, 4) + ", theta " +
                           fmt(r.timings.theta_ms, 4) + ", xor " + fmt(r.timings.xor_ms, 4));
  return out;
}

}  // namespace nlgame
