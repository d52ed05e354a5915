#pragma once

// Dense real linear algebra: a general row-major matrix, a symmetric matrix
// wrapper, cyclic Jacobi eigendecomposition and PSD-cone projection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "nlgame/error.hpp"

namespace nlgame {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      double* ci = c.data_.data() + i * c.cols_;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        const double* bk = b.data_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  std::vector<double> apply(std::span<const double> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector product: size mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sizes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

/// Frobenius inner product <A, B> = sum_ij A_ij B_ij.
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("inner product: sizes differ");
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

inline double trace(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
  return s;
}

/// Square real matrix that is symmetric by construction. Mutators write both
/// triangles, so the stored matrix is exactly symmetric at all times.
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t n, double fill = 0.0) : m_(n, n, fill) {}

  /// Accepts a square matrix whose asymmetry is below 1e-12 (relative to its
  /// largest entry when that exceeds one) and stores its symmetric part.
  explicit SymMatrix(const Matrix& m) : m_(m) {
    if (m.rows() != m.cols()) throw DimensionError("symmetric matrix must be square");
    double scale = 1.0;
    for (double v : m.data()) scale = std::max(scale, std::abs(v));
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = m(i, j), b = m(j, i);
        if (std::abs(a - b) > kSymmetryTolerance * scale)
          throw InvariantError("matrix", "not symmetric at (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
        const double avg = 0.5 * (a + b);
        m_(i, j) = avg;
        m_(j, i) = avg;
      }
  }

  static SymMatrix identity(std::size_t n) { return from_trusted(Matrix::identity(n)); }

  static SymMatrix diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.m_(i, i) = d[i];
    return s;
  }

  /// Symmetrizes m as (m + m^T)/2 without checking; for internal results
  /// that are symmetric up to rounding.
  static SymMatrix symmetrize(const Matrix& m) {
    SymMatrix s;
    s.m_ = m;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double avg = 0.5 * (m(i, j) + m(j, i));
        s.m_(i, j) = avg;
        s.m_(j, i) = avg;
      }
    return s;
  }

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }

  const Matrix& matrix() const noexcept { return m_; }

  SymMatrix& operator+=(const SymMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& o) {
    m_ -= o.m_;
    return *this;
  }
  SymMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  bool operator==(const SymMatrix&) const = default;

 private:
  static SymMatrix from_trusted(Matrix m) {
    SymMatrix s;
    s.m_ = std::move(m);
    return s;
  }

  Matrix m_;
};

inline double frobenius_norm(const SymMatrix& m) { return frobenius_norm(m.matrix()); }
inline double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  return frobenius_inner(a.matrix(), b.matrix());
}
inline double trace(const SymMatrix& m) { return trace(m.matrix()); }

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
};

namespace detail {

// Cyclic Jacobi on a working copy `a` (full symmetric storage) accumulating
// rotations into `vt`, whose rows are the eigenvectors. Rotations touch rows
// p and q only and mirror them into the columns, which keeps the inner loops
// contiguous. On return the diagonal of `a` holds the eigenvalues.
inline void jacobi_sweeps(Matrix& a, Matrix& vt) {
  const std::size_t n = a.rows();
  if (n < 2) return;
  double scale = frobenius_norm(a);
  if (scale == 0.0) return;
  const double target = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= target) break;

    const double skip = 1e-18 * scale;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= skip) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        double* ap = &a(p, 0);
        double* aq = &a(q, 0);
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = ap[k], aqk = aq[k];
          ap[k] = c * apk - s * aqk;
          aq[k] = s * apk + c * aqk;
        }
        ap[p] = app - t * apq;
        aq[q] = aqq + t * apq;
        ap[q] = 0.0;
        aq[p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = ap[k];
          a(k, q) = aq[k];
        }

        double* vp = &vt(p, 0);
        double* vq = &vt(q, 0);
        for (std::size_t k = 0; k < vt.cols(); ++k) {
          const double vpk = vp[k], vqk = vq[k];
          vp[k] = c * vpk - s * vqk;
          vq[k] = s * vpk + c * vqk;
        }
      }
    }
  }
}

inline EigenDecomposition sorted_decomposition(const Matrix& a, const Matrix& vt) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{std::vector<double>(n), Matrix(vt.cols(), n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < vt.cols(); ++k) out.vectors(k, j) = vt(order[j], k);
  }
  return out;
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are returned in ascending order.
inline EigenDecomposition jacobi_eigh(const SymMatrix& m) {
  if (m.size() == 0) throw DimensionError("jacobi_eigh: empty matrix");
  Matrix a = m.matrix();
  Matrix v = Matrix::identity(m.size());
  detail::jacobi_sweeps(a, v);
  return detail::sorted_decomposition(a, v);
}

/// Jacobi started from an approximate orthonormal eigenbasis. The rotated
/// matrix basis^T M basis is nearly diagonal when the basis comes from a
/// nearby matrix, so only a couple of sweeps are needed. Used by the ADMM
/// loop where consecutive iterates differ little.
inline EigenDecomposition jacobi_eigh(const SymMatrix& m, const Matrix& basis) {
  const std::size_t n = m.size();
  if (n == 0) throw DimensionError("jacobi_eigh: empty matrix");
  if (basis.rows() != n || basis.cols() != n) return jacobi_eigh(m);
  Matrix a = basis.transpose() * (m.matrix() * basis);
  // Re-symmetrize rounding noise before rotating.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = avg;
      a(j, i) = avg;
    }
  Matrix vt = basis.transpose();
  detail::jacobi_sweeps(a, vt);
  return detail::sorted_decomposition(a, vt);
}

/// Q diag(f(lambda)) Q^T for the given decomposition.
template <typename F>
SymMatrix spectral_map(const EigenDecomposition& e, F&& f) {
  const std::size_t n = e.vectors.rows();
  const std::size_t r = e.values.size();
  // Scale kept columns, then form (Q S)(Q)^T restricted to nonzero weights.
  std::vector<std::size_t> kept;
  std::vector<double> weight;
  for (std::size_t j = 0; j < r; ++j) {
    const double w = f(e.values[j]);
    if (w != 0.0) {
      kept.push_back(j);
      weight.push_back(w);
    }
  }
  Matrix out(n, n);
  for (std::size_t idx = 0; idx < kept.size(); ++idx) {
    const std::size_t j = kept[idx];
    const double w = weight[idx];
    for (std::size_t i = 0; i < n; ++i) {
      const double qi = w * e.vectors(i, j);
      if (qi == 0.0) continue;
      double* oi = &out(i, 0);
      for (std::size_t k = i; k < n; ++k) oi[k] += qi * e.vectors(k, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) out(k, i) = out(i, k);
  return SymMatrix::symmetrize(out);
}

/// Frobenius-nearest positive semidefinite matrix: negative eigenvalues
/// clamped to zero.
inline SymMatrix project_psd(const SymMatrix& m) {
  if (m.size() == 0) return m;
  return spectral_map(jacobi_eigh(m), [](double l) { return l > 0.0 ? l : 0.0; });
}

inline double min_eigenvalue(const SymMatrix& m) { return jacobi_eigh(m).values.front(); }

}  // namespace nlgame
