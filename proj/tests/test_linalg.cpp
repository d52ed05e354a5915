#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlgame/linalg.hpp"
#include "test_support.hpp"

using namespace nlgame;

namespace {

double reconstruction_error(const SymMatrix& m, const EigenDecomposition& e) {
  const SymMatrix r = spectral_map(e, [](double l) { return l; });
  return frobenius_norm(r - m);
}

double orthogonality_error(const Matrix& q) {
  return frobenius_norm(q.transpose() * q - Matrix::identity(q.rows()));
}

}  // namespace

TEST(Jacobi, IdentityHasUnitSpectrum) {
  const auto e = jacobi_eigh(SymMatrix::identity(3));
  for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Jacobi, DiagonalSortedAscending) {
  const std::vector<double> d = {2.0, -1.0};
  const auto e = jacobi_eigh(SymMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(e.values[0], -1.0);
  EXPECT_DOUBLE_EQ(e.values[1], 2.0);
}

TEST(Jacobi, TwoByTwoSwap) {
  SymMatrix m(2);
  m.set(0, 1, 1.0);
  const auto e = jacobi_eigh(m);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  // Eigenvector of -1 is (1, -1)/sqrt 2 up to sign.
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e.vectors(0, 0), -e.vectors(1, 0), 1e-14);
  EXPECT_NEAR(e.vectors(0, 1), e.vectors(1, 1), 1e-14);
}

TEST(Jacobi, RandomReconstructionAndOrthogonality) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    Matrix a(n, n);
    for (double& v : a.data()) v = normal(rng);
    const SymMatrix m = SymMatrix::symmetrize(a);
    const auto e = jacobi_eigh(m);
    EXPECT_LE(reconstruction_error(m, e), 1e-10 * std::max(1.0, frobenius_norm(m))) << n;
    EXPECT_LE(orthogonality_error(e.vectors), 1e-10) << n;
    for (std::size_t i = 1; i < n; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
  }
}

TEST(Jacobi, WarmStartMatchesColdStart) {
  std::mt19937_64 rng(11);
  const SymMatrix m = oracle::random_psd(rng, 12, 12);
  const auto cold = jacobi_eigh(m);
  SymMatrix perturbed = m;
  perturbed.add(0, 3, 1e-3);
  const auto warm = jacobi_eigh(perturbed, cold.vectors);
  const auto ref = jacobi_eigh(perturbed);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(warm.values[i], ref.values[i], 1e-10);
  EXPECT_LE(reconstruction_error(perturbed, warm), 1e-10 * frobenius_norm(perturbed));
}

TEST(SymMatrix, RejectsAsymmetricInput) {
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(SymMatrix{a}, InvariantError);
  a(1, 0) = 1.0 + 1e-14;
  EXPECT_NO_THROW(SymMatrix{a});
}

TEST(ProjectPsd, PsdInputIsFixed) {
  std::mt19937_64 rng(3);
  const SymMatrix m = oracle::random_psd(rng, 6, 3);
  EXPECT_LE(frobenius_norm(project_psd(m) - m), 1e-10);
}

TEST(ProjectPsd, ClampsNegativeEigenvalues) {
  const std::vector<double> d = {1.0, -2.0};
  const SymMatrix p = project_psd(SymMatrix::diagonal(d));
  EXPECT_NEAR(p(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);
}

TEST(ProjectPsd, ZeroMatrix) { EXPECT_EQ(frobenius_norm(project_psd(SymMatrix(4))), 0.0); }

TEST(ProjectPsd, IdempotentOnRandomInput) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 9;
    Matrix a(n, n);
    for (double& v : a.data()) v = normal(rng);
    const SymMatrix p = project_psd(SymMatrix::symmetrize(a));
    EXPECT_LE(frobenius_norm(project_psd(p) - p), 1e-10);
    EXPECT_GE(min_eigenvalue(p), -1e-10);
  }
}

TEST(ProjectPsd, IsNearestPsdMatrix) {
  // Any other PSD matrix is at least as far from the input.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Matrix a(5, 5);
  for (double& v : a.data()) v = normal(rng);
  const SymMatrix m = SymMatrix::symmetrize(a);
  const double best = frobenius_norm(project_psd(m) - m);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMatrix other = oracle::random_psd(rng, 5, 1 + trial % 5) * 0.3;
    EXPECT_GE(frobenius_norm(other - m), best - 1e-12);
  }
}
