#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlgame/independence.hpp"
#include "nlgame/sdp.hpp"
#include "test_support.hpp"

using namespace nlgame;

namespace {

constexpr double kTol = 1e-7;

// Checks the feasibility claims a ThetaResult makes about its primal matrix.
void expect_feasible(const Graph& g, const ThetaResult& r) {
  const SymMatrix& x = r.primal_matrix;
  ASSERT_EQ(x.size(), g.size());
  EXPECT_NEAR(trace(x), 1.0, 1e-8);
  for (auto [u, v] : g.edges()) EXPECT_LE(std::abs(x(u, v)), 1e-8);
  EXPECT_GE(min_eigenvalue(x), -1e-8);
}

double objective(const SymMatrix& x) {
  double s = 0.0;
  for (double v : x.matrix().data()) s += v;
  return s;
}

}  // namespace

TEST(LovaszTheta, CompleteGraph) {
  const auto r = lovasz_theta(Graph::complete(4));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  expect_feasible(Graph::complete(4), r);
}

TEST(LovaszTheta, EdgelessGraph) {
  const auto r = lovasz_theta(Graph::edgeless(5));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 5.0, 1e-6);
}

TEST(LovaszTheta, FiveCycleAgainstExplicitDual) {
  // Dual certificate: sqrt5 I - J + y A is PSD for y = 10 / (5 + sqrt5), so
  // theta(C5) <= sqrt5; the solver's feasible primal gives the lower side.
  const double s5 = std::sqrt(5.0), y = 10.0 / (5.0 + s5);
  const Graph c5 = Graph::cycle(5);
  SymMatrix dual = SymMatrix::identity(5) * s5;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) dual.add(i, j, -1.0);
  for (auto [u, v] : c5.edges()) dual.add(u, v, y);
  EXPECT_GE(min_eigenvalue(dual), -1e-12);

  const auto r = lovasz_theta(c5);
  EXPECT_TRUE(r.converged);
  expect_feasible(c5, r);
  EXPECT_NEAR(objective(r.primal_matrix), r.value, 1e-10);
  EXPECT_LE(r.value, s5 + 1e-9);
  EXPECT_NEAR(r.value, s5, 1e-5);
  EXPECT_GE(r.dual_bound, s5 - 1e-9);
  EXPECT_LE(r.gap, 1e-5);
}

TEST(LovaszTheta, ChshGameGraph) {
  const GameGraph gg = build_game_graph(chsh());
  const auto r = lovasz_theta(gg.graph);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0 + std::sqrt(2.0), 1e-4);
  expect_feasible(gg.graph, r);
}

TEST(LovaszTheta, RejectsBadInput) {
  EXPECT_THROW(lovasz_theta(Graph(0)), DimensionError);
  EXPECT_THROW(lovasz_theta(Graph(3), {0.0, 100, 1.0}), InvariantError);
}

TEST(LovaszTheta, IterationCapReportsUnconverged) {
  const auto r = lovasz_theta(Graph::cycle(7), {1e-7, 3, 1.0});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
  // The dual bound is still a valid upper bound.
  EXPECT_GE(r.dual_bound, lovasz_theta(Graph::cycle(7)).value - 1e-6);
}

TEST(WeightedTheta, UnitWeightsMatchUnweighted) {
  const Graph g = Graph::cycle(7);
  EXPECT_NEAR(weighted_theta(g, std::vector<double>(7, 1.0)).value, lovasz_theta(g).value, 1e-9);
}

TEST(WeightedTheta, ConstantWeightsScale) {
  const Graph g = Graph::cycle(5);
  const double c = 0.3;
  EXPECT_NEAR(weighted_theta(g, std::vector<double>(5, c)).value, c * std::sqrt(5.0), 10 * kTol);
}

TEST(WeightedTheta, ChshWeightedGameGraph) {
  const GameGraph gg = build_weighted_game_graph(chsh());
  EXPECT_NEAR(weighted_theta(gg.graph, *gg.weights).value, 0.5 + 0.5 / std::sqrt(2.0), 1e-4);
}

TEST(QuantumUpperBound, Catalog) {
  EXPECT_NEAR(quantum_upper_bound(chsh()).value, 0.853553, 1e-4);
  EXPECT_NEAR(quantum_upper_bound(chsh(), {}, true).value, 0.853553, 1e-4);
  EXPECT_NEAR(quantum_upper_bound(independent_set_game(Graph::complete(2), 1)).value, 1.0, 1e-6);
}

TEST(QuantumUpperBound, MagicSquareAllowsPerfectPlay) {
  const auto b = quantum_upper_bound(magic_square());
  EXPECT_GE(b.value, 1.0 - 1e-4);
  EXPECT_TRUE(b.certificate.converged);
}

TEST(Tsirelson, Chsh) {
  const auto x = xor_tsirelson(chsh());
  EXPECT_NEAR(x.value, 0.5 + 0.5 / std::sqrt(2.0), 1e-6);
  EXPECT_GE(x.upper, x.value - 1e-9);
}

TEST(Tsirelson, ConstantGameIsWon) {
  EXPECT_NEAR(xor_tsirelson_value(xor_game(2, 2, {0, 0, 0, 0})), 1.0, 1e-6);
}

TEST(Tsirelson, RejectsNonXorGames) {
  EXPECT_THROW(xor_tsirelson_value(magic_square()), NotXorGame);
  EXPECT_FALSE(is_xor_game(independent_set_game(Graph::cycle(5), 2)));
  EXPECT_TRUE(is_xor_game(xor_game(3, 2, {1, 0, 1, 1, 0, 0})));
}

TEST(Tsirelson, BiasedXorGamesBelowTheta) {
  // Tsirelson value is an entangled value, so it sits between the classical
  // value and the theta bound.
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t nx = 2 + trial % 2, ny = 2 + (trial / 2) % 2;
    std::vector<int> f(nx * ny);
    for (auto& v : f) v = bit(rng);
    const Game g = xor_game(nx, ny, f, oracle::random_rational_distribution(rng, nx * ny));
    const double q = xor_tsirelson_value(g);
    const double w = classical_value(g).value;
    const double theta = quantum_upper_bound(g).value;
    EXPECT_GE(q, w - 1e-6) << trial;
    EXPECT_LE(q, theta + 10 * kTol) << trial;
  }
}

TEST(SdpProperties, SandwichOnRandomGraphs) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_graph(rng, 3 + trial % 10, 0.2 + 0.15 * (trial % 5));
    const auto r = lovasz_theta(g);
    ASSERT_TRUE(r.converged) << trial;
    EXPECT_LE(independence_number(g).value, r.value + 10 * kTol) << trial;
    EXPECT_GE(r.dual_bound, r.value - 10 * kTol);
    EXPECT_LE(std::abs(r.gap), 10 * kTol);
    expect_feasible(g, r);
  }
}

TEST(SdpProperties, ThetaIsAdditiveOverDisjointUnions) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph a = oracle::random_graph(rng, 4 + trial % 4, 0.4);
    const Graph b = oracle::random_graph(rng, 3 + trial % 5, 0.5);
    // Each run certifies theta in [value, dual_bound]; the intervals for the
    // union and for the sum of the parts must overlap.
    const auto ra = lovasz_theta(a), rb = lovasz_theta(b), ru = lovasz_theta(disjoint_union(a, b));
    EXPECT_LE(ru.value, ra.dual_bound + rb.dual_bound + 1e-9) << trial;
    EXPECT_LE(ra.value + rb.value, ru.dual_bound + 1e-9) << trial;
    EXPECT_NEAR(ru.value, ra.value + rb.value, 1e-5) << trial;
  }
  EXPECT_NEAR(lovasz_theta(disjoint_union(Graph::cycle(5), Graph::cycle(5))).value, 2 * std::sqrt(5.0), 10 * kTol);
}

TEST(SdpProperties, ClassicalValueBelowThetaBound) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = oracle::random_boolean_game(rng, 2, 2, 0.5);
    if (g.winning_count() == 0) continue;
    const auto cv = classical_value(g);
    const auto ub = quantum_upper_bound(g);
    EXPECT_LE(cv.value, ub.value + 10 * kTol) << trial;
  }
}
