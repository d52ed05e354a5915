// nlgame: command-line front end.
//
//   nlgame analyze <game>... [--tol] [--json] [--rep] [--weighted] [--max-verts]
//                            [--seed] [--export-graph] [--timings] [--threads]
//                            [--max-iterations]
//   nlgame verify-qis <game> <qis.json> [--tol] [--json]
//   nlgame lift <game> <qis.json> [-o strategy.json]
//   nlgame catalog list | emit <name>
//   nlgame strategy list | emit <name> | eval <game> <file> | to-qis <game> <file>
//   nlgame qis classical <game>
//
// <game> is a path to a game file or a catalog name. Exit codes: 0 success,
// 1 bad input, 2 SDP did not converge, 3 invalid quantum independent set.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nlgame/nlgame.hpp"

namespace {

using namespace nlgame;

enum ExitCode { kOk = 0, kBadInput = 1, kNotConverged = 2, kInvalidQis = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Game load_game(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) {
    try {
      return parse_game(read_file(source));
    } catch (const ParseError& e) {
      throw ParseError(source + ": " + e.what(), 0, 0);
    }
  }
  if (auto g = catalog_game(source)) return *g;
  throw Error("'" + source + "' is neither a readable file nor a catalog game (see `catalog list`)");
}

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kBadInput;
}

struct AnalyzeArgs {
  std::vector<std::string> sources;
  double tol = 1e-7;
  bool json = false;
  std::size_t rep = 1;
  bool weighted = false;
  std::size_t max_verts = kDefaultVertexCap;
  std::uint64_t seed = 0;
  std::string export_graph;
  bool timings = false;
  unsigned threads = 0;
  std::uint64_t max_iterations = 200000;
};

int run_analyze(const AnalyzeArgs& a) {
  std::vector<Game> games;
  try {
    for (const auto& s : a.sources) {
      Game g = load_game(s);
      if (a.rep > 1) g = parallel_repetition(g, a.rep);
      games.push_back(std::move(g));
    }
  } catch (const std::exception& e) {
    return report_error(e);
  }

  if (!a.export_graph.empty()) {
    try {
      for (std::size_t i = 0; i < games.size(); ++i) {
        const Game& g = games[i];
        const bool weighted = a.weighted || !g.is_uniform() || !g.is_boolean();
        const GameGraph gg = weighted ? build_weighted_game_graph(g) : build_game_graph(g);
        const std::string base = games.size() == 1 ? a.export_graph : a.export_graph + "." + std::to_string(i);
        write_file(base, to_dimacs(gg.graph, "game graph of " + g.name()));
        write_file(base + ".json", json_util::dump(game_graph_sidecar(gg)) + "\n");
      }
    } catch (const std::exception& e) {
      return report_error(e);
    }
  }

  // One game per worker; results land in input order so output is stable.
  std::vector<std::optional<AnalysisReport>> reports(games.size());
  std::vector<std::string> errors(games.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next++) < games.size();) {
      try {
        reports[i] = analyze(games[i], {a.tol, a.weighted, a.max_verts, a.rep, a.max_iterations});
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(games.size(), a.threads ? a.threads : hw);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  json_util::json all = json_util::json::array();
  for (std::size_t i = 0; i < games.size(); ++i) {
    if (!reports[i]) {
      std::cerr << "error: " << games[i].name() << ": " << errors[i] << "\n";
      code = kBadInput;
      continue;
    }
    if (!reports[i]->theta.converged && code == kOk) code = kNotConverged;
    if (a.json) {
      all.push_back(report_to_json(*reports[i], a.timings));
    } else {
      if (i) std::cout << "\n";
      std::cout << report_to_text(*reports[i], a.timings);
    }
  }
  if (a.json) std::cout << json_util::dump(all.size() == 1 ? all[0] : all) << "\n";
  return code;
}

void print_violations(const QisReport& rep, const GameGraph& gg) {
  const auto vertex = [&gg](std::size_t v) {
    const Quadruple& q = gg.vertices[v];
    return "(" + std::to_string(q.x) + "," + std::to_string(q.y) + "," + std::to_string(q.a) + "," +
           std::to_string(q.b) + ")";
  };
  for (const auto& v : rep.violations) {
    std::cout << to_string(v.kind) << " measurement " << v.i;
    if (v.kind == QisViolation::Kind::kConsistency)
      std::cout << " vs " << v.j << " at " << vertex(v.u) << " " << vertex(v.v);
    else if (v.kind == QisViolation::Kind::kNotProjector)
      std::cout << " at " << vertex(v.u);
    std::cout << " magnitude " << json_util::format_double(v.magnitude) << "\n";
  }
}

json_util::json violations_json(const QisReport& rep, const GameGraph& gg) {
  using json = json_util::json;
  json out = json::array();
  const auto vertex = [&gg](std::size_t v) {
    const Quadruple& q = gg.vertices[v];
    return json{q.x, q.y, q.a, q.b};
  };
  for (const auto& v : rep.violations) {
    json e = {{"kind", to_string(v.kind)}, {"i", v.i}, {"magnitude", v.magnitude}};
    if (v.kind == QisViolation::Kind::kConsistency) {
      e["j"] = v.j;
      e["u"] = vertex(v.u);
      e["v"] = vertex(v.v);
    } else if (v.kind == QisViolation::Kind::kNotProjector) {
      e["u"] = vertex(v.u);
    }
    out.push_back(std::move(e));
  }
  return out;
}

int run_verify_qis(const std::string& game_src, const std::string& qis_path, double tol, bool json) {
  try {
    const Game g = load_game(game_src);
    const GameGraph gg = build_game_graph(g);
    const QuantumIndependentSet q = parse_qis(read_file(qis_path), gg);
    const QisReport rep = verify_quantum_independent_set(gg, q, tol);
    if (json) {
      std::cout << json_util::dump({{"valid", rep.valid},
                                    {"t", q.t},
                                    {"d", q.d},
                                    {"lower_bound", static_cast<double>(q.t) / static_cast<double>(g.k())},
                                    {"violations", violations_json(rep, gg)}})
                << "\n";
    } else {
      std::cout << (rep.valid ? "valid" : "INVALID") << " quantum independent set: t=" << q.t << " d=" << q.d
                << " (" << rep.violations.size() << " violations)\n";
      if (rep.valid)
        std::cout << "entangled value >= t/k = " << json_util::format_double(static_cast<double>(q.t) / g.k()) << "\n";
      print_violations(rep, gg);
    }
    return rep.valid ? kOk : kInvalidQis;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int run_lift(const std::string& game_src, const std::string& qis_path, const std::string& out_path) {
  try {
    const Game g = load_game(game_src);
    const GameGraph gg = build_game_graph(g);
    const QuantumIndependentSet q = parse_qis(read_file(qis_path), gg);
    const QisReport rep = verify_quantum_independent_set(gg, q);
    if (!rep.valid) {
      std::cerr << "error: quantum independent set is invalid\n";
      print_violations(rep, gg);
      return kInvalidQis;
    }
    const QuantumStrategy s = lift_qis_to_strategy(g, gg, q);
    const double p = winning_probability(g, s);
    if (!out_path.empty()) write_file(out_path, serialize_strategy(s));
    std::cout << "winning probability " << json_util::format_double(p) << " (t/k = "
              << json_util::format_double(static_cast<double>(q.t) / g.k()) << ", d = " << s.dA << ")\n";
    return kOk;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-local games: classical value, theta bounds and quantum independent sets"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "run the bound pipeline on games (files or catalog names)");
  analyze_cmd->add_option("games", aa.sources, "game files or catalog names")->required();
  analyze_cmd->add_option("--tol", aa.tol, "SDP tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  analyze_cmd->add_flag("--json", aa.json, "emit JSON instead of text");
  analyze_cmd->add_option("--rep", aa.rep, "analyze the n-fold parallel repetition")->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--weighted", aa.weighted, "force the weighted pipeline");
  analyze_cmd->add_option("--max-verts", aa.max_verts, "vertex cap for the independent set search")->capture_default_str();
  analyze_cmd->add_option("--seed", aa.seed, "reserved; all algorithms are deterministic");
  analyze_cmd->add_option("--export-graph", aa.export_graph, "write the game graph as DIMACS (plus a .json sidecar)");
  analyze_cmd->add_flag("--timings", aa.timings, "include per-stage timings (makes output nondeterministic)");
  analyze_cmd->add_option("--threads", aa.threads, "worker threads for batch runs (default: hardware)");
  analyze_cmd->add_option("--max-iterations", aa.max_iterations, "SDP iteration cap")->capture_default_str();

  std::string game_src, file_path, out_path;
  double qis_tol = 1e-9;
  bool qis_json = false;
  auto* verify_cmd = app.add_subcommand("verify-qis", "check a quantum independent set against a game graph");
  verify_cmd->add_option("game", game_src)->required();
  verify_cmd->add_option("qis", file_path)->required();
  verify_cmd->add_option("--tol", qis_tol, "consistency tolerance")->capture_default_str();
  verify_cmd->add_flag("--json", qis_json);

  auto* lift_cmd = app.add_subcommand("lift", "turn a quantum independent set into a strategy");
  lift_cmd->add_option("game", game_src)->required();
  lift_cmd->add_option("qis", file_path)->required();
  lift_cmd->add_option("-o,--output", out_path, "write the strategy JSON here");

  std::string name;
  auto* catalog_cmd = app.add_subcommand("catalog", "list or emit catalog games");
  catalog_cmd->require_subcommand(1);
  auto* catalog_list = catalog_cmd->add_subcommand("list", "names and descriptions");
  auto* catalog_emit = catalog_cmd->add_subcommand("emit", "print a catalog game as JSON");
  catalog_emit->add_option("name", name)->required();

  auto* strategy_cmd = app.add_subcommand("strategy", "catalog strategies and strategy files");
  strategy_cmd->require_subcommand(1);
  auto* strategy_list = strategy_cmd->add_subcommand("list", "names, games and descriptions");
  auto* strategy_emit = strategy_cmd->add_subcommand("emit", "print a catalog strategy as JSON");
  strategy_emit->add_option("name", name)->required();
  auto* strategy_eval = strategy_cmd->add_subcommand("eval", "winning probability of a strategy file");
  strategy_eval->add_option("game", game_src)->required();
  strategy_eval->add_option("strategy", file_path)->required();
  auto* strategy_qis = strategy_cmd->add_subcommand("to-qis", "quantum independent set from a commuting perfect strategy");
  strategy_qis->add_option("game", game_src)->required();
  strategy_qis->add_option("strategy", file_path)->required();

  auto* qis_cmd = app.add_subcommand("qis", "build quantum independent sets");
  qis_cmd->require_subcommand(1);
  auto* qis_classical = qis_cmd->add_subcommand("classical", "one-dimensional QIS from a maximum independent set");
  qis_classical->add_option("game", game_src)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  if (*analyze_cmd) return run_analyze(aa);
  if (*verify_cmd) return run_verify_qis(game_src, file_path, qis_tol, qis_json);
  if (*lift_cmd) return run_lift(game_src, file_path, out_path);

  try {
    if (*catalog_list) {
      for (const auto& e : game_catalog()) std::cout << e.name << "\t" << e.description << "\n";
      return kOk;
    }
    if (*catalog_emit) {
      const auto g = catalog_game(name);
      if (!g) throw Error("unknown catalog game '" + name + "'");
      std::cout << serialize_game(*g);
      return kOk;
    }
    if (*strategy_list) {
      for (const auto& e : strategy_catalog()) std::cout << e.name << "\t" << e.game << "\t" << e.description << "\n";
      return kOk;
    }
    if (*strategy_emit) {
      const auto s = catalog_strategy(name);
      if (!s) throw Error("unknown catalog strategy '" + name + "'");
      std::cout << serialize_strategy(*s);
      return kOk;
    }
    if (*strategy_eval) {
      const Game g = load_game(game_src);
      const QuantumStrategy s = parse_strategy(read_file(file_path));
      std::cout << "winning probability " << json_util::format_double(winning_probability(g, s)) << "\n";
      return kOk;
    }
    if (*strategy_qis) {
      const Game g = load_game(game_src);
      const QuantumStrategy s = parse_strategy(read_file(file_path));
      const QuantumIndependentSet q = strategy_to_qis(g, s);
      std::cout << serialize_qis(q, build_game_graph(g));
      return kOk;
    }
    if (*qis_classical) {
      const Game g = load_game(game_src);
      const GameGraph gg = build_game_graph(g);
      const auto mis = independence_number(gg.graph);
      std::cout << serialize_qis(qis_from_independent_set(gg.size(), mis.witness), gg);
      return kOk;
    }
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return kBadInput;
}
