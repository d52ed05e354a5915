#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nlgame/error.hpp"

namespace nlgame {

/// Fixed-size bitset with the handful of set operations the graph
/// algorithms need.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// this &= ~o
  Bitset& subtract(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  bool operator==(const Bitset&) const = default;

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
/// Symmetric and irreflexive by construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : rows_(n, Bitset(n)) {}

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }
  static Graph edgeless(std::size_t n) { return Graph(n); }
  static Graph cycle(std::size_t n) {
    Graph g(n);
    if (n < 3) throw InvariantError("graph", "cycle needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  }
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t size() const noexcept { return rows_.size(); }

  void add_edge(std::size_t u, std::size_t v) {
    check(u);
    check(v);
    if (u == v) throw InvariantError("graph", "self-loop at vertex " + std::to_string(u));
    rows_[u].set(v);
    rows_[v].set(u);
  }

  bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
  const Bitset& neighbors(std::size_t u) const { return rows_[u]; }
  std::size_t degree(std::size_t u) const { return rows_[u].count(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
      rows_[u].for_each([&](std::size_t v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  /// Graph with vertex `v` and its incident edges removed; remaining vertices
  /// keep their relative order.
  Graph without_vertex(std::size_t v) const {
    check(v);
    Graph g(size() - 1);
    auto map = [v](std::size_t u) { return u < v ? u : u - 1; };
    for (auto [a, b] : edges())
      if (a != v && b != v) g.add_edge(map(a), map(b));
    return g;
  }

  friend Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.size() + b.size());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.size() + u, a.size() + v);
    return g;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check(std::size_t u) const {
    if (u >= size()) throw DimensionError("vertex index " + std::to_string(u) + " out of range");
  }

  std::vector<Bitset> rows_;
};

/// Whether no two vertices of `set` are adjacent in g.
inline bool is_independent(const Graph& g, const std::vector<std::size_t>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.adjacent(set[i], set[j])) return false;
  return true;
}

}  // namespace nlgame
