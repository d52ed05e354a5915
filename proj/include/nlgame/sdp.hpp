#pragma once

// ADMM solver for semidefinite programs of the form
//
//   maximize <C, X>  s.t.  X_ij = b_ij for (i,j) in F,  [Tr X = tau],  X psd,
//
// and the graph/game quantities built on it: the Lovasz theta number
// (max <J, X> s.t. Tr X = 1, X_uv = 0 on edges), its weighted version, the
// theta upper bound on the entangled value of a game, and the entangled value
// of XOR games.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/game_graph.hpp"
#include "nlgame/graph.hpp"
#include "nlgame/linalg.hpp"

namespace nlgame {

struct EntryConstraint {
  std::size_t i = 0, j = 0;  // i <= j
  double value = 0.0;
};

struct SdpProblem {
  SymMatrix objective;
  std::optional<double> trace;
  std::vector<EntryConstraint> fixed;
  /// Strictly feasible (positive definite) point satisfying all constraints.
  /// Used to repair the final iterate into an exactly feasible one and to
  /// evaluate the dual objective.
  SymMatrix anchor;
};

struct SdpOptions {
  double tol = 1e-7;
  std::uint64_t max_iterations = 200000;
  double rho = 1.0;
};

struct ThetaResult {
  double value = 0.0;        // <C, X> at a feasible primal point
  double dual_bound = 0.0;   // objective of a feasible dual point
  double gap = 0.0;          // dual_bound - value
  std::uint64_t iterations = 0;
  bool converged = false;
  SymMatrix primal_matrix;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

class NotXorGame : public Error {
 public:
  using Error::Error;
};

namespace detail {

class AdmmSdp {
 public:
  // Penalty rebalancing runs on a fixed cadence; adjusting every iteration
  // makes rho oscillate and slows convergence several-fold.
  static constexpr std::uint64_t kBalanceInterval = 20;
  static constexpr int kPolishSteps = 30;
  static constexpr std::uint64_t kCertifyInterval = 100;

  AdmmSdp(const SdpProblem& p, const SdpOptions& o) : p_(p), o_(o), n_(p.objective.size()) {
    if (n_ == 0) throw DimensionError("SDP of dimension zero");
    if (p.anchor.size() != n_) throw DimensionError("anchor dimension differs from the objective");
    fixed_mask_ = Matrix(n_, n_);
    for (const auto& c : p.fixed) {
      if (c.i >= n_ || c.j >= n_) throw DimensionError("constraint index out of range");
      fixed_mask_(c.i, c.j) = fixed_mask_(c.j, c.i) = 1.0;
    }
    free_diag_ = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (fixed_mask_(i, i) == 0.0) ++free_diag_;
    if (!p.trace && free_diag_ > 0)
      throw InvariantError("sdp", "without a trace constraint every diagonal entry must be fixed");
    anchor_min_eig_ = min_eigenvalue(p.anchor);
    if (anchor_min_eig_ <= 0.0) throw InvariantError("sdp", "anchor must be positive definite");
  }

  ThetaResult solve() {
    double rho = o_.rho;
    SymMatrix z = p_.anchor;
    SymMatrix u(n_);
    Matrix basis;
    ThetaResult best;
    best.dual_bound = INFINITY;
    bool have_certificate = false;
    std::uint64_t next_certify = 0;

    std::uint64_t it = 0;
    for (; it < o_.max_iterations; ++it) {
      SymMatrix v = z - u;
      v += (1.0 / rho) * p_.objective;
      SymMatrix x = project_affine(v);

      SymMatrix w = x + u;
      EigenDecomposition e = jacobi_eigh(w, basis);
      basis = e.vectors;
      SymMatrix z_new = spectral_map(e, [](double l) { return l > 0.0 ? l : 0.0; });
      u = w - z_new;  // negative part of w

      const double r = frobenius_norm(x - z_new);
      const double s = rho * frobenius_norm(z_new - z);
      z = std::move(z_new);
      const double scale = 1.0 + frobenius_norm(x);
      last_x_ = x;

      if (r < o_.tol * scale && s < o_.tol * scale && it >= next_certify) {
        ThetaResult c = certify(x, u, rho, basis);
        c.iterations = it + 1;
        c.primal_residual = r;
        c.dual_residual = s;
        keep_best(best, c, have_certificate);
        if (c.gap <= 10.0 * o_.tol) {
          best.converged = true;
          best.iterations = it + 1;
          return best;
        }
        next_certify = it + kCertifyInterval;
      }

      if ((it + 1) % kBalanceInterval != 0) continue;
      if (r > 10.0 * s) {
        rho *= 2.0;
        u *= 0.5;
      } else if (s > 10.0 * r) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
    ThetaResult c = certify(last_x_, u, rho, basis);
    c.iterations = it;
    keep_best(best, c, have_certificate);
    best.iterations = it;
    best.converged = false;
    return best;
  }

 private:
  // Projection onto span{E_ij : (i,j) fixed} (+ span{I on free diagonal} when
  // a trace constraint is present): the normal space of the affine set.
  SymMatrix project_span(const SymMatrix& m) const {
    SymMatrix out(n_);
    double free_sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        if (fixed_mask_(i, j) != 0.0) out.set(i, j, m(i, j));
    if (p_.trace && free_diag_ > 0) {
      for (std::size_t i = 0; i < n_; ++i)
        if (fixed_mask_(i, i) == 0.0) free_sum += m(i, i);
      const double mean = free_sum / static_cast<double>(free_diag_);
      for (std::size_t i = 0; i < n_; ++i)
        if (fixed_mask_(i, i) == 0.0) out.set(i, i, mean);
    }
    return out;
  }

  SymMatrix project_affine(const SymMatrix& v) const { return v - project_span(v - p_.anchor); }

  // Feasible primal point from the affine iterate (pulled toward the anchor
  // until psd) and feasible dual point from the multiplier (shifted by the
  // most negative eigenvalue of the dual slack).
  ThetaResult certify(const SymMatrix& x_affine, const SymMatrix& u, double rho, const Matrix& basis) const {
    ThetaResult r;
    // A few alternating projections between the psd cone and the affine set
    // shrink the negative part, so the pull toward the anchor costs less.
    SymMatrix x = x_affine;
    EigenDecomposition e = jacobi_eigh(x, basis);
    for (int k = 0; k < kPolishSteps && e.values.front() < 0.0; ++k) {
      x = project_affine(spectral_map(e, [](double l) { return l > 0.0 ? l : 0.0; }));
      e = jacobi_eigh(x, e.vectors);
    }
    const double lmin = e.values.front();
    if (lmin < 0.0) {
      const double theta = -lmin / (anchor_min_eig_ - lmin);
      x = (1.0 - theta) * x + theta * p_.anchor;
    }
    r.value = frobenius_inner(p_.objective, x);
    r.primal_matrix = std::move(x);

    SymMatrix y = project_span(p_.objective - rho * u);
    const double dmin = min_eigenvalue(y - p_.objective);
    if (dmin < 0.0) y += (-dmin) * SymMatrix::identity(n_);
    r.dual_bound = frobenius_inner(y, p_.anchor);
    r.gap = r.dual_bound - r.value;
    return r;
  }

  static void keep_best(ThetaResult& best, const ThetaResult& c, bool& have) {
    if (!have) {
      best = c;
      have = true;
      return;
    }
    if (c.value > best.value) {
      best.value = c.value;
      best.primal_matrix = c.primal_matrix;
    }
    best.dual_bound = std::min(best.dual_bound, c.dual_bound);
    best.gap = best.dual_bound - best.value;
    best.primal_residual = c.primal_residual;
    best.dual_residual = c.dual_residual;
  }

  const SdpProblem& p_;
  SdpOptions o_;
  std::size_t n_;
  Matrix fixed_mask_;
  std::size_t free_diag_ = 0;
  double anchor_min_eig_ = 0.0;
  SymMatrix last_x_;
};

}  // namespace detail

/// Solves an SDP in the form above. On return value <= optimum <= dual_bound
/// (up to rounding); converged means dual_bound - value <= 10 * tol.
inline ThetaResult solve_sdp(const SdpProblem& p, const SdpOptions& o = {}) { return detail::AdmmSdp(p, o).solve(); }

/// Weighted Lovasz theta: maximize sum_uv sqrt(w_u w_v) X_uv over Tr X = 1,
/// X_uv = 0 on edges, X psd.
inline ThetaResult weighted_theta(const Graph& g, const std::vector<double>& w, const SdpOptions& o = {}) {
  const std::size_t n = g.size();
  if (n == 0) throw DimensionError("theta of the empty graph");
  if (w.size() != n) throw DimensionError("weight vector does not match the graph");
  for (double x : w)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvariantError("weights", "negative or non-finite weight");
  if (!(o.tol > 0.0)) throw InvariantError("tol", "must be positive");
  SdpProblem p;
  p.objective = SymMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) p.objective.set(i, j, std::sqrt(w[i] * w[j]));
  p.trace = 1.0;
  for (auto [u, v] : g.edges()) p.fixed.push_back({u, v, 0.0});
  p.anchor = SymMatrix::identity(n) * (1.0 / static_cast<double>(n));
  return solve_sdp(p, o);
}

/// Lovasz theta number.
inline ThetaResult lovasz_theta(const Graph& g, const SdpOptions& o = {}) {
  return weighted_theta(g, std::vector<double>(g.size(), 1.0), o);
}

struct QuantumUpperBound {
  double value = 0.0;   // bound on the entangled value
  double scale = 1.0;   // value = certificate.value * scale
  bool weighted = false;
  ThetaResult certificate;
};

/// Upper bound on the entangled value: theta(G)/k for uniform 0/1 games, the
/// weighted theta of the weighted game graph otherwise. The bound reported is
/// the certified dual value, so it stays an upper bound even when the solver
/// stops early.
inline QuantumUpperBound quantum_upper_bound(const Game& g, const SdpOptions& o = {}, bool force_weighted = false) {
  QuantumUpperBound out;
  out.weighted = force_weighted || !g.is_uniform() || !g.is_boolean();
  if (!out.weighted) {
    const GameGraph gg = build_game_graph(g);
    if (gg.size() == 0) return out;
    out.certificate = lovasz_theta(gg.graph, o);
    out.scale = 1.0 / static_cast<double>(g.k());
  } else {
    const GameGraph gg = build_weighted_game_graph(g);
    if (gg.size() == 0) return out;
    out.certificate = weighted_theta(gg.graph, *gg.weights, o);
    out.scale = 1.0;
  }
  out.value = out.certificate.dual_bound * out.scale;
  return out;
}

/// Whether lambda(x, y, a, b) depends only on x, y and a xor b (binary answers).
inline bool is_xor_game(const Game& g) {
  if (g.na() != 2 || g.nb() != 2) return false;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      if (g.lambda(x, y, 0, 0) != g.lambda(x, y, 1, 1) || g.lambda(x, y, 0, 1) != g.lambda(x, y, 1, 0)) return false;
  return true;
}

struct XorValue {
  double value = 0.0;        // primal (achievable) value
  double upper = 0.0;        // certified dual value
  ThetaResult certificate;   // of the Gram-matrix program without the constant term
};

/// Entangled value of an XOR game from the Gram-matrix program over unit
/// vectors u_x, v_y: with c0 = lambda on a==b and c1 = lambda on a!=b,
/// value = sum pi (c0 + c1)/2 + max sum pi (c0 - c1)/2 <u_x, v_y>.
inline XorValue xor_tsirelson(const Game& g, const SdpOptions& o = {1e-9, 200000, 1.0}) {
  if (!is_xor_game(g)) throw NotXorGame("game '" + g.name() + "' is not an XOR game");
  const std::size_t nx = g.nx(), ny = g.ny(), n = nx + ny;
  SdpProblem p;
  p.objective = SymMatrix(n);
  double constant = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double c0 = g.lambda(x, y, 0, 0), c1 = g.lambda(x, y, 0, 1);
      constant += g.pi(x, y) * (c0 + c1) / 2.0;
      // <C, G> counts the off-diagonal entry twice.
      p.objective.set(x, nx + y, g.pi(x, y) * (c0 - c1) / 4.0);
    }
  for (std::size_t i = 0; i < n; ++i) p.fixed.push_back({i, i, 1.0});
  p.anchor = SymMatrix::identity(n);
  XorValue out;
  out.certificate = solve_sdp(p, o);
  out.value = constant + out.certificate.value;
  out.upper = constant + out.certificate.dual_bound;
  return out;
}

inline double xor_tsirelson_value(const Game& g, const SdpOptions& o = {1e-9, 200000, 1.0}) {
  return xor_tsirelson(g, o).value;
}

}  // namespace nlgame
