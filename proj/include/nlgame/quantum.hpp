#pragma once

// Entangled strategies and quantum independent sets.
//
// A strategy is a shared state on C^dA (x) C^dB with one projective
// measurement per question for each player. A quantum independent set of
// size t on a graph is t projective measurements {P^i_v} indexed by vertices
// with P^i_u P^j_v = 0 whenever i != j and (u ~ v or u == v).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/game_graph.hpp"
#include "nlgame/graph.hpp"
#include "nlgame/linalg.hpp"

namespace nlgame {

using Complex = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  explicit CMatrix(const Matrix& m) : CMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = m.data()[i];
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Complex>& data() const noexcept { return data_; }

  CMatrix adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }
  CMatrix transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix real() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data()[i] = data_[i].real();
    return m;
  }
  double max_abs_imag() const {
    double s = 0.0;
    for (const auto& z : data_) s = std::max(s, std::abs(z.imag()));
    return s;
  }

  CMatrix& operator+=(const CMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    CMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  bool operator==(const CMatrix&) const = default;

 private:
  void check_same(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sizes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

class InvalidStrategy : public Error {
 public:
  using Error::Error;
};
class InvalidQis : public Error {
 public:
  using Error::Error;
};
class NotPseudoTelepathy : public Error {
 public:
  using Error::Error;
};
class NonCommuting : public Error {
 public:
  using Error::Error;
};

/// Shared state is row-major over (i, j) with i in [dA], j in [dB].
/// alice[x][a] is a dA x dA projector; bob[y][b] is dB x dB. A family may
/// carry more outputs than the game has; the extra outputs always lose.
struct QuantumStrategy {
  std::size_t dA = 0, dB = 0;
  std::vector<Complex> state;
  std::vector<std::vector<CMatrix>> alice;
  std::vector<std::vector<CMatrix>> bob;
};

/// (1/sqrt(d)) sum_i |i, i>
inline std::vector<Complex> maximally_entangled_state(std::size_t d) {
  std::vector<Complex> s(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) s[i * d + i] = amp;
  return s;
}

inline bool is_maximally_entangled(const QuantumStrategy& s, double tol = 1e-12) {
  if (s.dA != s.dB || s.state.size() != s.dA * s.dB) return false;
  const auto ref = maximally_entangled_state(s.dA);
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (std::abs(s.state[i] - ref[i]) > tol) return false;
  return true;
}

namespace detail {

inline void check_measurement(const std::vector<CMatrix>& family, std::size_t d, double tol, const std::string& who) {
  CMatrix sum(d, d);
  for (std::size_t o = 0; o < family.size(); ++o) {
    const CMatrix& p = family[o];
    if (p.rows() != d || p.cols() != d) throw DimensionError(who + ": projector " + std::to_string(o) + " has wrong size");
    if (frobenius_norm(p - p.adjoint()) > tol) throw InvalidStrategy(who + ": element " + std::to_string(o) + " is not Hermitian");
    if (frobenius_norm(p * p - p) > tol) throw InvalidStrategy(who + ": element " + std::to_string(o) + " is not a projector");
    sum += p;
  }
  if (frobenius_norm(sum - CMatrix::identity(d)) > tol) throw InvalidStrategy(who + ": elements do not sum to the identity");
}

}  // namespace detail

/// Throws InvalidStrategy / DimensionError if the strategy's measurements are
/// not projective and complete within `tol`, or the state is not a unit vector.
inline void validate_strategy(const QuantumStrategy& s, double tol = 1e-9) {
  if (s.dA == 0 || s.dB == 0) throw DimensionError("strategy dimensions must be positive");
  if (s.state.size() != s.dA * s.dB) throw DimensionError("state length differs from dA * dB");
  double norm2 = 0.0;
  for (const auto& z : s.state) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) throw InvalidStrategy("state is not normalized");
  for (std::size_t x = 0; x < s.alice.size(); ++x)
    detail::check_measurement(s.alice[x], s.dA, tol, "alice[" + std::to_string(x) + "]");
  for (std::size_t y = 0; y < s.bob.size(); ++y)
    detail::check_measurement(s.bob[y], s.dB, tol, "bob[" + std::to_string(y) + "]");
}

/// <psi| P (x) Q |psi> computed densely as Tr(Psi^dagger P Psi Q^T), where Psi
/// is the state reshaped to a dA x dB matrix.
inline double expectation(const CMatrix& p, const CMatrix& q, const std::vector<Complex>& state, std::size_t dA,
                          std::size_t dB) {
  CMatrix psi(dA, dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dB; ++j) psi(i, j) = state[i * dB + j];
  const CMatrix m = p * psi * q.transpose();
  Complex s{};
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dB; ++j) s += std::conj(psi(i, j)) * m(i, j);
  return s.real();
}

/// <psi| P (x) Q |psi> for the maximally entangled state: Tr(P Q^T) / d.
inline double expectation_maximally_entangled(const CMatrix& p, const CMatrix& q) {
  Complex s{};
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) s += p(i, j) * q(i, j);
  return s.real() / static_cast<double>(p.rows());
}

/// sum_{x,y,a,b} pi(x,y) lambda(x,y,a,b) <psi| P^x_a (x) Q^y_b |psi>
inline double winning_probability(const Game& g, const QuantumStrategy& s) {
  if (s.alice.size() != g.nx() || s.bob.size() != g.ny())
    throw DimensionError("strategy question sets do not match the game");
  for (const auto& f : s.alice)
    if (f.size() < g.na()) throw DimensionError("alice has fewer outputs than the game");
  for (const auto& f : s.bob)
    if (f.size() < g.nb()) throw DimensionError("bob has fewer outputs than the game");
  validate_strategy(s);
  const bool fast = is_maximally_entangled(s);
  double total = 0.0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      if (g.pi(x, y) == 0.0) continue;
      for (std::size_t a = 0; a < g.na(); ++a)
        for (std::size_t b = 0; b < g.nb(); ++b) {
          const double l = g.lambda(x, y, a, b);
          if (l == 0.0) continue;
          const double e = fast ? expectation_maximally_entangled(s.alice[x][a], s.bob[y][b])
                                : expectation(s.alice[x][a], s.bob[y][b], s.state, s.dA, s.dB);
          total += g.pi(x, y) * l * e;
        }
    }
  return total;
}

// ---------------------------------------------------------------------------
// Support projectors

inline constexpr double kSuppTolerance = 1e-8;

/// Projector onto the column space of a real symmetric PSD matrix: the span
/// of eigenvectors with eigenvalue > tol * lambda_max. Throws InvariantError
/// when an eigenvalue is below -tol * max(1, lambda_max).
inline Matrix supp(const SymMatrix& m, double tol = kSuppTolerance) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  const EigenDecomposition e = jacobi_eigh(m);
  const double lmax = e.values.back();
  if (e.values.front() < -tol * std::max(1.0, lmax)) throw InvariantError("supp", "matrix is not positive semidefinite");
  if (lmax <= 0.0) return Matrix(n, n);
  const double cut = tol * lmax;
  return spectral_map(e, [cut](double l) { return l > cut ? 1.0 : 0.0; }).matrix();
}

/// Complex Hermitian version. H = A + iB is embedded as the real symmetric
/// [[A, -B], [B, A]], whose support projector has the same block form.
inline CMatrix supp(const CMatrix& h, double tol = kSuppTolerance) {
  const std::size_t n = h.rows();
  if (h.cols() != n) throw DimensionError("supp: matrix must be square");
  if (frobenius_norm(h - h.adjoint()) > 1e-9 * std::max(1.0, frobenius_norm(h)))
    throw InvariantError("supp", "matrix is not Hermitian");
  Matrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = h(i, j).real(), im = h(i, j).imag();
      big(i, j) = re;
      big(n + i, n + j) = re;
      big(i, n + j) = -im;
      big(n + i, j) = im;
    }
  const Matrix p = supp(SymMatrix::symmetrize(big), tol);
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Complex(p(i, j), p(n + i, j));
  return out;
}

/// Checks <v| supp(M + N) |v> >= <v| supp(M) |v> - 1e-9 for PSD M, N.
inline bool supp_is_monotone_at(const SymMatrix& m, const SymMatrix& n, const std::vector<double>& v) {
  if (m.size() != n.size() || v.size() != m.size()) throw DimensionError("supp_is_monotone_at: sizes differ");
  const auto quad = [&v](const Matrix& p) {
    const auto pv = p.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * pv[i];
    return s;
  };
  // Both arguments must be PSD on their own.
  (void)supp(n);
  return quad(supp(m + n)) >= quad(supp(m)) - 1e-9;
}

// ---------------------------------------------------------------------------
// Quantum independent sets

/// projectors[i][v] is the real d x d element of measurement i for vertex v.
struct QuantumIndependentSet {
  std::size_t t = 0;
  std::size_t d = 0;
  std::vector<std::vector<Matrix>> projectors;
};

struct QisViolation {
  enum class Kind { kNotProjector, kIncomplete, kConsistency } kind;
  std::size_t i = 0, j = 0;  // measurement indices (j unused unless consistency)
  std::size_t u = 0, v = 0;  // vertices (v unused unless consistency)
  double magnitude = 0.0;
};

struct QisReport {
  bool valid = true;
  std::vector<QisViolation> violations;
};

inline const char* to_string(QisViolation::Kind k) {
  switch (k) {
    case QisViolation::Kind::kNotProjector: return "not_projector";
    case QisViolation::Kind::kIncomplete: return "incomplete";
    case QisViolation::Kind::kConsistency: return "consistency";
  }
  return "unknown";
}

/// Checks that each family is a projective measurement summing to I and that
/// ||P^i_u P^j_v||_F <= tol for every i < j and every (u, v) with u ~ v or
/// u == v. Violations are returned as data; only size mismatches throw.
inline QisReport verify_quantum_independent_set(const Graph& g, const QuantumIndependentSet& q, double tol = 1e-9) {
  if (q.projectors.size() != q.t) throw DimensionError("QIS lists " + std::to_string(q.projectors.size()) + " measurements, t = " + std::to_string(q.t));
  for (const auto& fam : q.projectors) {
    if (fam.size() != g.size()) throw DimensionError("QIS measurement does not cover every vertex");
    for (const auto& p : fam)
      if (p.rows() != q.d || p.cols() != q.d) throw DimensionError("QIS projector has wrong dimension");
  }
  QisReport rep;
  const auto add = [&rep](QisViolation v) {
    rep.valid = false;
    rep.violations.push_back(v);
  };

  std::vector<std::vector<bool>> nonzero(q.t, std::vector<bool>(g.size(), false));
  for (std::size_t i = 0; i < q.t; ++i) {
    Matrix sum(q.d, q.d);
    for (std::size_t v = 0; v < g.size(); ++v) {
      const Matrix& p = q.projectors[i][v];
      nonzero[i][v] = frobenius_norm(p) > 0.0;
      if (!nonzero[i][v]) continue;
      const double err = std::max(frobenius_norm(p * p - p), frobenius_norm(p - p.transpose()));
      if (err > tol) add({QisViolation::Kind::kNotProjector, i, 0, v, 0, err});
      sum += p;
    }
    const double err = frobenius_norm(sum - Matrix::identity(q.d));
    if (err > tol) add({QisViolation::Kind::kIncomplete, i, 0, 0, 0, err});
  }

  for (std::size_t i = 0; i < q.t; ++i)
    for (std::size_t j = i + 1; j < q.t; ++j)
      for (std::size_t u = 0; u < g.size(); ++u) {
        if (!nonzero[i][u]) continue;
        const auto check = [&](std::size_t v) {
          if (!nonzero[j][v]) return;
          const double m = frobenius_norm(q.projectors[i][u] * q.projectors[j][v]);
          if (m > tol) add({QisViolation::Kind::kConsistency, i, j, u, v, m});
        };
        check(u);
        g.neighbors(u).for_each(check);
      }
  return rep;
}

inline QisReport verify_quantum_independent_set(const GameGraph& gg, const QuantumIndependentSet& q, double tol = 1e-9) {
  return verify_quantum_independent_set(gg.graph, q, tol);
}

/// One-dimensional embedding of an independent set: measurement i answers
/// vertex set[i] with certainty.
inline QuantumIndependentSet qis_from_independent_set(std::size_t vertex_count, const std::vector<std::size_t>& set) {
  QuantumIndependentSet q;
  q.t = set.size();
  q.d = 1;
  q.projectors.assign(q.t, std::vector<Matrix>(vertex_count, Matrix(1, 1)));
  for (std::size_t i = 0; i < set.size(); ++i) q.projectors[i].at(set[i])(0, 0) = 1.0;
  return q;
}

/// Strategy from a quantum independent set of the game graph. Both players
/// share the maximally entangled state of local dimension d; on question x
/// Alice measures {supp(sum_{y,b,i} P^i_{xyab})}_a plus the completion
/// I - sum_a, appended as output index na (a losing answer). Bob does the
/// same over (x, a).
inline QuantumStrategy lift_qis_to_strategy(const Game& g, const GameGraph& gg, const QuantumIndependentSet& q,
                                            double tol = 1e-9) {
  if (gg.source_k != g.k()) throw DimensionError("game graph does not belong to this game");
  const QisReport rep = verify_quantum_independent_set(gg, q, tol);
  if (!rep.valid)
    throw InvalidQis("quantum independent set has " + std::to_string(rep.violations.size()) + " violation(s)");

  const std::size_t d = q.d;
  std::vector<std::vector<Matrix>> sum_a(g.nx(), std::vector<Matrix>(g.na(), Matrix(d, d)));
  std::vector<std::vector<Matrix>> sum_b(g.ny(), std::vector<Matrix>(g.nb(), Matrix(d, d)));
  for (std::size_t v = 0; v < gg.size(); ++v) {
    const Quadruple& qv = gg.vertices[v];
    for (std::size_t i = 0; i < q.t; ++i) {
      sum_a[qv.x][qv.a] += q.projectors[i][v];
      sum_b[qv.y][qv.b] += q.projectors[i][v];
    }
  }
  const auto family = [d](const std::vector<Matrix>& sums) {
    std::vector<CMatrix> out;
    Matrix rest = Matrix::identity(d);
    for (const Matrix& m : sums) {
      const Matrix p = supp(SymMatrix::symmetrize(m));
      rest -= p;
      out.emplace_back(p);
    }
    out.emplace_back(SymMatrix::symmetrize(rest).matrix());
    return out;
  };

  QuantumStrategy s;
  s.dA = s.dB = d;
  s.state = maximally_entangled_state(d);
  for (std::size_t x = 0; x < g.nx(); ++x) s.alice.push_back(family(sum_a[x]));
  for (std::size_t y = 0; y < g.ny(); ++y) s.bob.push_back(family(sum_b[y]));
  return s;
}

/// Quantum independent set of size k = |X x Y| from a perfect strategy whose
/// measurements commute once Bob's operators are moved to Alice's side.
///
/// With the maximally entangled state, <psi|P (x) Q|psi> = Tr(P Q^T)/d, so
/// Bob's projector acts on Alice's space as Q^T. Measurement (x, y) of the
/// result assigns P^x_a (Q^y_b)^T to each winning (x, y, a, b) and zero to
/// every other vertex.
inline QuantumIndependentSet strategy_to_qis(const Game& g, const QuantumStrategy& s, double tol = 1e-9) {
  if (!g.is_boolean()) throw InvariantError("predicate", "needs a 0/1 predicate");
  if (s.dA != s.dB) throw DimensionError("strategy must have equal local dimensions");
  if (!is_maximally_entangled(s)) throw InvalidStrategy("strategy state is not maximally entangled");
  const double value = winning_probability(g, s);
  if (value < 1.0 - tol)
    throw NotPseudoTelepathy("strategy wins with probability " + std::to_string(value) + " < 1");

  const std::size_t d = s.dA;
  std::vector<std::vector<CMatrix>> bob_t(g.ny());
  for (std::size_t y = 0; y < g.ny(); ++y)
    for (const auto& q : s.bob[y]) bob_t[y].push_back(q.transpose());

  double worst = 0.0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (const auto& p : s.alice[x])
      for (std::size_t y = 0; y < g.ny(); ++y)
        for (const auto& qt : bob_t[y]) worst = std::max(worst, frobenius_norm(p * qt - qt * p));
  if (worst > tol)
    throw NonCommuting("Alice's and Bob's projectors do not commute (largest commutator norm " +
                       std::to_string(worst) + ")");

  const GameGraph gg = build_game_graph(g);
  QuantumIndependentSet out;
  out.t = g.k();
  out.d = d;
  out.projectors.assign(out.t, std::vector<Matrix>(gg.size(), Matrix(d, d)));
  for (std::size_t v = 0; v < gg.size(); ++v) {
    const Quadruple& q = gg.vertices[v];
    const CMatrix pi = s.alice[q.x][q.a] * bob_t[q.y][q.b];
    if (pi.max_abs_imag() > tol) throw InvalidStrategy("product projectors are not real");
    out.projectors[q.x * g.ny() + q.y][v] = SymMatrix::symmetrize(pi.real()).matrix();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog strategies (test fixtures and CLI examples)

/// Deterministic strategy written as one-dimensional projectors.
inline QuantumStrategy classical_as_quantum(const Game& g, const ClassicalStrategy& c) {
  QuantumStrategy s;
  s.dA = s.dB = 1;
  s.state = {1.0};
  for (std::size_t x = 0; x < g.nx(); ++x) {
    std::vector<CMatrix> fam(g.na(), CMatrix(1, 1));
    fam.at(c.alice.at(x))(0, 0) = 1.0;
    s.alice.push_back(std::move(fam));
  }
  for (std::size_t y = 0; y < g.ny(); ++y) {
    std::vector<CMatrix> fam(g.nb(), CMatrix(1, 1));
    fam.at(c.bob.at(y))(0, 0) = 1.0;
    s.bob.push_back(std::move(fam));
  }
  return s;
}

namespace pauli {
inline CMatrix i2() { return CMatrix::identity(2); }
inline CMatrix x() {
  CMatrix m(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}
inline CMatrix z() {
  CMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
inline CMatrix y() {
  CMatrix m(2, 2);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return m;
}
}  // namespace pauli

/// Optimal CHSH strategy on |Phi+>: Alice measures along Bloch angles 0 and
/// pi/2 in the x-z plane, Bob along pi/4 and -pi/4. Outcome 0 is the +1
/// eigenspace.
inline QuantumStrategy chsh_optimal_strategy() {
  const auto measurement = [](double angle) {
    CMatrix obs = std::cos(angle) * pauli::z() + std::sin(angle) * pauli::x();
    CMatrix p0 = 0.5 * (pauli::i2() + obs);
    CMatrix p1 = pauli::i2() - p0;
    return std::vector<CMatrix>{p0, p1};
  };
  const double pi = std::numbers::pi;
  QuantumStrategy s;
  s.dA = s.dB = 2;
  s.state = maximally_entangled_state(2);
  s.alice = {measurement(0.0), measurement(pi / 2)};
  s.bob = {measurement(pi / 4), measurement(-pi / 4)};
  return s;
}

/// Mermin-Peres square of two-qubit observables:
///
///     X1      X2      X1 X2
///     Z2      Z1      Z1 Z2
///    -X1 Z2  -Z1 X2   Y1 Y2
///
/// Rows multiply to +I and columns to -I. Entries of a row (column) commute.
/// All nine are real symmetric, so Bob can use them unchanged on two shared
/// |Phi+> pairs. Alice's answer a has row bits (a>>1, a&1); bit 0 means the
/// +1 eigenvalue. Bob's answer is encoded the same way over column entries.
inline CMatrix magic_square_observable(std::size_t row, std::size_t col) {
  using namespace pauli;
  const CMatrix table[3][3] = {
      {kron(x(), i2()), kron(i2(), x()), kron(x(), x())},
      {kron(i2(), z()), kron(z(), i2()), kron(z(), z())},
      {Complex(-1) * kron(x(), z()), Complex(-1) * kron(z(), x()), kron(y(), y())},
  };
  return table[row][col];
}

inline QuantumStrategy magic_square_strategy() {
  const CMatrix id = CMatrix::identity(4);
  const auto spectral = [&](const CMatrix& o, int bit) { return 0.5 * (id + (bit ? Complex(-1) : Complex(1)) * o); };
  QuantumStrategy s;
  s.dA = s.dB = 4;
  s.state = maximally_entangled_state(4);
  for (std::size_t x = 0; x < 3; ++x) {
    std::vector<CMatrix> fam;
    for (std::size_t a = 0; a < 4; ++a)
      fam.push_back(spectral(magic_square_observable(x, 0), magic::row_bit(a, 0)) *
                    spectral(magic_square_observable(x, 1), magic::row_bit(a, 1)));
    s.alice.push_back(std::move(fam));
  }
  for (std::size_t y = 0; y < 3; ++y) {
    std::vector<CMatrix> fam;
    for (std::size_t b = 0; b < 4; ++b)
      fam.push_back(spectral(magic_square_observable(0, y), magic::column_bit(b, 0)) *
                    spectral(magic_square_observable(1, y), magic::column_bit(b, 1)));
    s.bob.push_back(std::move(fam));
  }
  return s;
}

/// Largest ||P (Q)^T - (Q)^T P||_F over all Alice/Bob projector pairs: zero
/// exactly when the strategy meets the commutation hypothesis of
/// strategy_to_qis.
inline double max_commutator_norm(const QuantumStrategy& s) {
  double worst = 0.0;
  for (const auto& fa : s.alice)
    for (const auto& p : fa)
      for (const auto& fb : s.bob)
        for (const auto& q : fb) {
          const CMatrix qt = q.transpose();
          worst = std::max(worst, frobenius_norm(p * qt - qt * p));
        }
  return worst;
}

}  // namespace nlgame
