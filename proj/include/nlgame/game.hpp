#pragma once

// Two-player one-round games: sizes, predicate table, input distribution,
// plus the catalog of standard games and game-level transformations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nlgame/error.hpp"
#include "nlgame/graph.hpp"

namespace nlgame {

/// Answer/question quadruple, always ordered (x, y, a, b).
struct Quadruple {
  std::size_t x = 0, y = 0, a = 0, b = 0;
  auto operator<=>(const Quadruple&) const = default;
};

/// A non-local game. The predicate table is row-major in (x, y, a, b) and the
/// distribution row-major in (x, y). Immutable once constructed.
class Game {
 public:
  static constexpr double kDistributionTolerance = 1e-12;

  Game(std::string name, std::size_t nx, std::size_t ny, std::size_t na, std::size_t nb,
       std::vector<double> predicate, std::vector<double> distribution)
      : name_(std::move(name)),
        nx_(nx),
        ny_(ny),
        na_(na),
        nb_(nb),
        predicate_(std::move(predicate)),
        distribution_(std::move(distribution)) {
    validate();
  }

  /// Same as above with the uniform distribution 1/(nx*ny).
  Game(std::string name, std::size_t nx, std::size_t ny, std::size_t na, std::size_t nb,
       std::vector<double> predicate)
      : Game(std::move(name), nx, ny, na, nb, std::move(predicate), uniform_distribution(nx, ny)) {}

  static std::vector<double> uniform_distribution(std::size_t nx, std::size_t ny) {
    if (nx == 0 || ny == 0) throw InvariantError("sizes", "input sets must be non-empty");
    return std::vector<double>(nx * ny, 1.0 / static_cast<double>(nx * ny));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t na() const noexcept { return na_; }
  std::size_t nb() const noexcept { return nb_; }
  /// Number of question pairs |X x Y|.
  std::size_t k() const noexcept { return nx_ * ny_; }

  std::size_t index(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const noexcept {
    return ((x * ny_ + y) * na_ + a) * nb_ + b;
  }

  /// Predicate value with bounds checking.
  double eval_predicate(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    if (x >= nx_ || y >= ny_ || a >= na_ || b >= nb_)
      throw DimensionError("predicate index (" + std::to_string(x) + "," + std::to_string(y) + "," +
                           std::to_string(a) + "," + std::to_string(b) + ") out of range");
    return predicate_[index(x, y, a, b)];
  }
  double lambda(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const noexcept {
    return predicate_[index(x, y, a, b)];
  }
  double pi(std::size_t x, std::size_t y) const noexcept { return distribution_[x * ny_ + y]; }

  const std::vector<double>& predicate() const noexcept { return predicate_; }
  const std::vector<double>& distribution() const noexcept { return distribution_; }

  bool is_boolean() const {
    return std::all_of(predicate_.begin(), predicate_.end(), [](double v) { return v == 0.0 || v == 1.0; });
  }

  bool is_uniform() const {
    const double u = 1.0 / static_cast<double>(k());
    return std::all_of(distribution_.begin(), distribution_.end(),
                       [u](double p) { return std::abs(p - u) <= 1e-15; });
  }

  std::size_t winning_count() const {
    return static_cast<std::size_t>(std::count_if(predicate_.begin(), predicate_.end(), [](double v) { return v > 0.0; }));
  }

  /// Equality of sizes and tables; names are labels and are not compared.
  bool same_tables(const Game& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && na_ == o.na_ && nb_ == o.nb_ && predicate_ == o.predicate_ &&
           distribution_ == o.distribution_;
  }

 private:
  void validate() const {
    if (nx_ == 0 || ny_ == 0 || na_ == 0 || nb_ == 0)
      throw InvariantError("sizes", "nx, ny, na, nb must be positive");
    if (predicate_.size() != nx_ * ny_ * na_ * nb_)
      throw InvariantError("predicate", "table has " + std::to_string(predicate_.size()) + " entries, expected " +
                                            std::to_string(nx_ * ny_ * na_ * nb_));
    if (distribution_.size() != nx_ * ny_)
      throw InvariantError("distribution", "table has " + std::to_string(distribution_.size()) +
                                               " entries, expected " + std::to_string(nx_ * ny_));
    for (double v : predicate_)
      if (!(v >= 0.0 && v <= 1.0)) throw InvariantError("predicate", "entry outside [0,1]");
    double total = 0.0;
    for (double p : distribution_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw InvariantError("distribution", "negative or non-finite entry");
      total += p;
    }
    if (std::abs(total - 1.0) > kDistributionTolerance)
      throw InvariantError("distribution", "distribution not normalized (sum " + std::to_string(total) + ")");
  }

  std::string name_;
  std::size_t nx_, ny_, na_, nb_;
  std::vector<double> predicate_;
  std::vector<double> distribution_;
};

/// Deterministic classical strategy: Alice answers f_a[x], Bob f_b[y].
struct ClassicalStrategy {
  std::vector<std::size_t> alice;
  std::vector<std::size_t> bob;
  bool operator==(const ClassicalStrategy&) const = default;
};

/// sum_{x,y} pi(x,y) lambda(x, y, f_a(x), f_b(y))
inline double winning_probability(const Game& g, const ClassicalStrategy& s) {
  if (s.alice.size() != g.nx() || s.bob.size() != g.ny())
    throw DimensionError("strategy does not match the game's input sets");
  double total = 0.0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      if (s.alice[x] >= g.na() || s.bob[y] >= g.nb()) throw DimensionError("strategy output out of range");
      total += g.pi(x, y) * g.lambda(x, y, s.alice[x], s.bob[y]);
    }
  return total;
}

/// Number of question pairs won by a strategy on a 0/1 game.
inline std::size_t winning_pairs(const Game& g, const ClassicalStrategy& s) {
  std::size_t wins = 0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      if (g.lambda(x, y, s.alice[x], s.bob[y]) > 0.0) ++wins;
  return wins;
}

// ---------------------------------------------------------------------------
// Catalog and transformations

/// XOR game with win condition a xor b == f(x, y). `f` is row-major (x, y).
inline Game xor_game(std::size_t nx, std::size_t ny, const std::vector<int>& f, std::vector<double> distribution,
                     std::string name = "xor") {
  if (nx == 0 || ny == 0 || f.size() != nx * ny)
    throw InvariantError("f", "table has " + std::to_string(f.size()) + " entries, expected " + std::to_string(nx * ny));
  std::vector<double> pred(nx * ny * 4, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const int fx = f[x * ny + y];
      if (fx != 0 && fx != 1) throw InvariantError("f", "entries must be 0 or 1");
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          pred[((x * ny + y) * 2 + a) * 2 + b] = static_cast<int>(a ^ b) == fx ? 1.0 : 0.0;
    }
  return Game(std::move(name), nx, ny, 2, 2, std::move(pred), std::move(distribution));
}

inline Game xor_game(std::size_t nx, std::size_t ny, const std::vector<int>& f, std::string name = "xor") {
  return xor_game(nx, ny, f, Game::uniform_distribution(nx, ny), std::move(name));
}

/// CHSH: binary questions and answers, win iff a xor b == x and y.
inline Game chsh() { return xor_game(2, 2, {0, 0, 0, 1}, "chsh"); }

namespace magic {
// Alice's answer a in 0..3 holds row bits (a>>1, a&1); the third bit completes
// even parity. Bob's answer holds column bits the same way with odd parity.
inline int row_bit(std::size_t a, std::size_t j) {
  const int r0 = static_cast<int>((a >> 1) & 1u), r1 = static_cast<int>(a & 1u);
  return j == 0 ? r0 : j == 1 ? r1 : (r0 ^ r1);
}
inline int column_bit(std::size_t b, std::size_t i) {
  const int c0 = static_cast<int>((b >> 1) & 1u), c1 = static_cast<int>(b & 1u);
  return i == 0 ? c0 : i == 1 ? c1 : (1 ^ c0 ^ c1);
}
}  // namespace magic

/// Mermin-Peres magic square: Alice fills row x, Bob column y; they win when
/// the shared cell (x, y) agrees.
inline Game magic_square() {
  std::vector<double> pred(3 * 3 * 4 * 4, 0.0);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          pred[((x * 3 + y) * 4 + a) * 4 + b] = magic::row_bit(a, y) == magic::column_bit(b, x) ? 1.0 : 0.0;
  return Game("magic-square", 3, 3, 4, 4, std::move(pred));
}

/// Game with every answer winning.
inline Game all_ones_game(std::size_t nx, std::size_t ny, std::size_t na, std::size_t nb) {
  return Game("all-ones", nx, ny, na, nb, std::vector<double>(nx * ny * na * nb, 1.0));
}

/// Independent-set game with t questions per player on graph h: players lose
/// if x == y and v != w, or x != y and (v ~ w or v == w).
inline Game independent_set_game(const Graph& h, std::size_t t) {
  if (t == 0) throw InvariantError("t", "must be at least 1");
  const std::size_t n = h.size();
  if (n == 0) throw InvariantError("graph", "must have at least one vertex");
  std::vector<double> pred(t * t * n * n, 0.0);
  for (std::size_t x = 0; x < t; ++x)
    for (std::size_t y = 0; y < t; ++y)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
          const bool lose = (x == y) ? (v != w) : (v == w || h.adjacent(v, w));
          pred[((x * t + y) * n + v) * n + w] = lose ? 0.0 : 1.0;
        }
  return Game("isg-t" + std::to_string(t), t, t, n, n, std::move(pred));
}

/// Default cap on nx*ny*na*nb for constructed games.
inline constexpr std::size_t kDefaultTableCap = std::size_t{1} << 24;

/// Product game: question and answer indices are row-major pairs with the
/// first factor most significant; predicates multiply, distributions multiply.
inline Game product_game(const Game& g, const Game& h, std::size_t table_cap = kDefaultTableCap) {
  const std::size_t nx = g.nx() * h.nx(), ny = g.ny() * h.ny(), na = g.na() * h.na(), nb = g.nb() * h.nb();
  const long double total = static_cast<long double>(nx) * ny * na * nb;
  if (total > static_cast<long double>(table_cap))
    throw CapExceeded("product game table would have " + std::to_string(static_cast<double>(total)) +
                      " entries (cap " + std::to_string(table_cap) + ")");
  std::vector<double> pred(nx * ny * na * nb, 0.0);
  std::vector<double> dist(nx * ny, 0.0);
  for (std::size_t x1 = 0; x1 < g.nx(); ++x1)
    for (std::size_t x2 = 0; x2 < h.nx(); ++x2)
      for (std::size_t y1 = 0; y1 < g.ny(); ++y1)
        for (std::size_t y2 = 0; y2 < h.ny(); ++y2) {
          const std::size_t x = x1 * h.nx() + x2, y = y1 * h.ny() + y2;
          dist[x * ny + y] = g.pi(x1, y1) * h.pi(x2, y2);
          for (std::size_t a1 = 0; a1 < g.na(); ++a1)
            for (std::size_t b1 = 0; b1 < g.nb(); ++b1) {
              const double l1 = g.lambda(x1, y1, a1, b1);
              if (l1 == 0.0) continue;
              for (std::size_t a2 = 0; a2 < h.na(); ++a2)
                for (std::size_t b2 = 0; b2 < h.nb(); ++b2) {
                  const std::size_t a = a1 * h.na() + a2, b = b1 * h.nb() + b2;
                  pred[((x * ny + y) * na + a) * nb + b] = l1 * h.lambda(x2, y2, a2, b2);
                }
            }
        }
  return Game(g.name() + "*" + h.name(), nx, ny, na, nb, std::move(pred), std::move(dist));
}

/// n-fold parallel repetition: every coordinate must be won.
inline Game parallel_repetition(const Game& g, std::size_t n, std::size_t table_cap = kDefaultTableCap) {
  if (n == 0) throw InvariantError("n", "repetition count must be at least 1");
  if (n == 1) return g;
  Game acc = g;
  for (std::size_t i = 1; i < n; ++i) acc = product_game(acc, g, table_cap);
  return Game(g.name() + "^" + std::to_string(n), acc.nx(), acc.ny(), acc.na(), acc.nb(), acc.predicate(),
              acc.distribution());
}

}  // namespace nlgame
