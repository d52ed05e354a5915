#pragma once

// Exact (weighted) maximum independent set by branch and bound, the classical
// value of a game through its game graph, and an exhaustive strategy search
// used as an independent check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/game_graph.hpp"
#include "nlgame/graph.hpp"

namespace nlgame {

inline constexpr std::size_t kDefaultVertexCap = 512;

struct IndependenceResult {
  double value = 0.0;                 // cardinality or total weight
  std::vector<std::size_t> witness;   // ascending vertex indices
  std::uint64_t nodes_explored = 0;
};

namespace detail {

// Branch and bound for maximum-weight independent set. Candidates are
// partitioned greedily into cliques (colour classes of the complement); an
// independent set takes at most one vertex per clique, so the sum of the
// per-class maximum weights bounds what the candidates can still add.
class MisSolver {
 public:
  MisSolver(const Graph& g, const std::vector<double>& w) : g_(g), w_(w) {
    const std::size_t n = g.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    // Descending degree, ties by index.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    nonadj_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      Bitset na(n);
      na.set_all();
      na.subtract(g.neighbors(v));
      na.reset(v);
      nonadj_.push_back(std::move(na));
    }
  }

  IndependenceResult run() {
    const std::size_t n = g_.size();
    Bitset all(n);
    all.set_all();
    // Zero-weight vertices never help; drop them up front.
    for (std::size_t v = 0; v < n; ++v)
      if (w_[v] <= 0.0) all.reset(v);
    expand(all, 0.0);
    IndependenceResult r;
    r.value = best_;
    r.witness = best_set_;
    std::sort(r.witness.begin(), r.witness.end());
    r.nodes_explored = nodes_;
    return r;
  }

 private:
  void expand(Bitset candidates, double current) {
    ++nodes_;
    // Candidate vertices in the static order.
    std::vector<std::size_t> cand;
    for (std::size_t v : order_)
      if (candidates.test(v)) cand.push_back(v);

    // Greedy clique cover.
    std::vector<Bitset> common;      // vertices adjacent to every member of class c
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cand) {
      std::size_t c = 0;
      while (c < classes.size() && !common[c].test(v)) ++c;
      if (c == classes.size()) {
        classes.emplace_back();
        common.push_back(g_.neighbors(v));
      } else {
        common[c] &= g_.neighbors(v);
      }
      classes[c].push_back(v);
    }

    // Vertices listed class by class with a running bound.
    std::vector<std::size_t> seq;
    std::vector<double> bound;
    double full = 0.0;
    for (const auto& cls : classes) {
      double cls_max = 0.0;
      for (std::size_t v : cls) {
        cls_max = std::max(cls_max, w_[v]);
        seq.push_back(v);
        bound.push_back(full + cls_max);
      }
      full += cls_max;
    }

    for (std::size_t i = seq.size(); i-- > 0;) {
      if (current + bound[i] <= best_) return;
      const std::size_t v = seq[i];
      chosen_.push_back(v);
      const double next = current + w_[v];
      Bitset rest = candidates & nonadj_[v];
      if (rest.none()) {
        if (next > best_) {
          best_ = next;
          best_set_ = chosen_;
        }
      } else {
        expand(std::move(rest), next);
      }
      chosen_.pop_back();
      candidates.reset(v);
    }
  }

  const Graph& g_;
  const std::vector<double>& w_;
  std::vector<std::size_t> order_;
  std::vector<Bitset> nonadj_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_set_;
  double best_ = 0.0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Maximum-weight independent set. Weights must be non-negative.
inline IndependenceResult weighted_independence(const Graph& g, const std::vector<double>& w,
                                                std::size_t max_vertices = kDefaultVertexCap) {
  if (g.size() > max_vertices)
    throw CapExceeded("graph has " + std::to_string(g.size()) + " vertices (cap " + std::to_string(max_vertices) + ")");
  if (w.size() != g.size()) throw DimensionError("weight vector does not match the graph");
  for (double x : w)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvariantError("weights", "negative or non-finite weight");
  if (g.size() == 0) return {};
  return detail::MisSolver(g, w).run();
}

/// Independence number alpha(G) with a maximum independent set as witness.
inline IndependenceResult independence_number(const Graph& g, std::size_t max_vertices = kDefaultVertexCap) {
  return weighted_independence(g, std::vector<double>(g.size(), 1.0), max_vertices);
}

struct ClassicalValue {
  double value = 0.0;
  std::optional<std::size_t> alpha;   // set on the unweighted path
  ClassicalStrategy strategy;
  IndependenceResult independent_set;
  bool weighted = false;
};

/// Reads a strategy off an independent set of a game graph: on input x Alice
/// answers the a shared by all chosen vertices with that x (inputs with no
/// chosen vertex answer 0); Bob likewise. Vertices are visited in ascending
/// index order, so the first one fixes the answer.
inline ClassicalStrategy strategy_from_independent_set(const Game& g, const GameGraph& gg,
                                                       const std::vector<std::size_t>& set) {
  ClassicalStrategy s{std::vector<std::size_t>(g.nx(), 0), std::vector<std::size_t>(g.ny(), 0)};
  std::vector<bool> fixed_a(g.nx(), false), fixed_b(g.ny(), false);
  std::vector<std::size_t> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t v : sorted) {
    const Quadruple& q = gg.vertices.at(v);
    if (!fixed_a[q.x]) {
      s.alice[q.x] = q.a;
      fixed_a[q.x] = true;
    }
    if (!fixed_b[q.y]) {
      s.bob[q.y] = q.b;
      fixed_b[q.y] = true;
    }
  }
  return s;
}

/// Classical value via the game graph: alpha / k for uniform 0/1 games, and
/// the maximum-weight independent set of the weighted game graph otherwise.
inline ClassicalValue classical_value(const Game& g, bool force_weighted = false,
                                      std::size_t max_vertices = kDefaultVertexCap) {
  ClassicalValue out;
  out.weighted = force_weighted || !g.is_uniform() || !g.is_boolean();
  if (!out.weighted) {
    const GameGraph gg = build_game_graph(g);
    out.independent_set = independence_number(gg.graph, max_vertices);
    out.alpha = out.independent_set.witness.size();
    out.value = static_cast<double>(*out.alpha) / static_cast<double>(g.k());
    out.strategy = strategy_from_independent_set(g, gg, out.independent_set.witness);
  } else {
    const GameGraph gg = build_weighted_game_graph(g);
    out.independent_set = weighted_independence(gg.graph, *gg.weights, max_vertices);
    out.value = out.independent_set.value;
    out.strategy = strategy_from_independent_set(g, gg, out.independent_set.witness);
  }
  return out;
}

inline constexpr std::uint64_t kDefaultStrategyCap = std::uint64_t{1} << 24;

struct BruteForceValue {
  double value = 0.0;
  std::optional<std::size_t> wins;   // winning question pairs, for uniform 0/1 games
  ClassicalStrategy strategy;
  std::uint64_t strategies_enumerated = 0;
};

/// Exhaustive search over deterministic strategies. The side with fewer
/// strategies is enumerated; the other side plays the best response for each
/// of its inputs independently, which is exact because the payoff separates
/// over Bob's (or Alice's) inputs once the opponent is fixed. The cap bounds
/// the number of enumerated strategies.
inline BruteForceValue classical_value_brute(const Game& g, std::uint64_t cap = kDefaultStrategyCap) {
  const auto count = [cap](std::size_t outputs, std::size_t inputs) -> std::optional<std::uint64_t> {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < inputs; ++i) {
      if (c > cap / outputs) return std::nullopt;
      c *= outputs;
    }
    return c;
  };
  const auto alice_count = count(g.na(), g.nx());
  const auto bob_count = count(g.nb(), g.ny());
  if (!alice_count && !bob_count) throw CapExceeded("strategy space exceeds the enumeration cap");
  const bool enumerate_alice = alice_count && (!bob_count || *alice_count <= *bob_count);

  // Views so both orientations share one loop: "fixed" is the enumerated
  // player, "free" the best-responding one.
  const std::size_t n_fixed_in = enumerate_alice ? g.nx() : g.ny();
  const std::size_t n_fixed_out = enumerate_alice ? g.na() : g.nb();
  const std::size_t n_free_in = enumerate_alice ? g.ny() : g.nx();
  const std::size_t n_free_out = enumerate_alice ? g.nb() : g.na();
  const auto payoff = [&](std::size_t fi, std::size_t fo, std::size_t ri, std::size_t ro) {
    return enumerate_alice ? g.pi(fi, ri) * g.lambda(fi, ri, fo, ro) : g.pi(ri, fi) * g.lambda(ri, fi, ro, fo);
  };

  const bool integral = g.is_uniform() && g.is_boolean();
  BruteForceValue best;
  best.value = -1.0;
  std::size_t best_wins = 0;

  std::vector<std::size_t> fixed(n_fixed_in, 0);
  std::vector<std::size_t> response(n_free_in, 0);
  for (;;) {
    ++best.strategies_enumerated;
    double total = 0.0;
    std::size_t wins = 0;
    for (std::size_t r = 0; r < n_free_in; ++r) {
      double best_col = -1.0;
      std::size_t best_out = 0, best_col_wins = 0;
      for (std::size_t o = 0; o < n_free_out; ++o) {
        double s = 0.0;
        std::size_t w = 0;
        for (std::size_t f = 0; f < n_fixed_in; ++f) {
          const double p = payoff(f, fixed[f], r, o);
          s += p;
          if (p > 0.0) ++w;
        }
        // Integral games compare win counts so ties are exact.
        const bool better = integral ? (best_col < 0.0 || w > best_col_wins) : s > best_col;
        if (better) {
          best_col = s;
          best_col_wins = w;
          best_out = o;
        }
      }
      response[r] = best_out;
      total += best_col;
      wins += best_col_wins;
    }
    const bool improved = integral ? (best.value < 0.0 || wins > best_wins) : total > best.value;
    if (improved) {
      best.value = total;
      best_wins = wins;
      if (enumerate_alice)
        best.strategy = {fixed, response};
      else
        best.strategy = {response, fixed};
    }
    // Next fixed strategy (odometer).
    std::size_t i = 0;
    while (i < n_fixed_in && ++fixed[i] == n_fixed_out) fixed[i++] = 0;
    if (i == n_fixed_in) break;
  }
  if (integral) {
    best.wins = best_wins;
    best.value = static_cast<double>(best_wins) / static_cast<double>(g.k());
  }
  return best;
}

}  // namespace nlgame
