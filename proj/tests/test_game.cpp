#include <gtest/gtest.h>

#include <array>
#include <random>

#include "nlgame/game.hpp"
#include "nlgame/independence.hpp"
#include "test_support.hpp"

using namespace nlgame;

TEST(Predicate, ChshEntries) {
  const Game g = chsh();
  EXPECT_EQ(g.eval_predicate(0, 0, 0, 0), 1.0);
  EXPECT_EQ(g.eval_predicate(1, 1, 0, 0), 0.0);
  EXPECT_EQ(g.eval_predicate(1, 1, 0, 1), 1.0);
  EXPECT_THROW(g.eval_predicate(2, 0, 0, 0), Error);
}

TEST(Predicate, AllOnes) {
  const Game g = all_ones_game(2, 2, 2, 2);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(g.eval_predicate(i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1), 1.0);
}

TEST(Chsh, EightWinningQuadruples) {
  const Game g = chsh();
  std::size_t wins = 0;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const bool expected = (a ^ b) == (x & y);
          EXPECT_EQ(g.lambda(x, y, a, b), expected ? 1.0 : 0.0);
          wins += expected;
        }
  EXPECT_EQ(wins, 8u);
  EXPECT_EQ(g.winning_count(), 8u);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) EXPECT_EQ(g.pi(x, y), 0.25);
}

TEST(MagicSquare, SeventyTwoWinningQuadruples) {
  // Rows with even parity and columns with odd parity, listed explicitly.
  const std::array<std::array<int, 3>, 4> rows = {{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  const std::array<std::array<int, 3>, 4> cols = {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}};
  const Game g = magic_square();
  std::size_t wins = 0;
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
          const bool expected = rows[a][y] == cols[b][x];
          EXPECT_EQ(g.lambda(x, y, a, b), expected ? 1.0 : 0.0) << x << y << a << b;
          wins += expected;
        }
  EXPECT_EQ(wins, 72u);
  EXPECT_DOUBLE_EQ(g.pi(1, 2), 1.0 / 9.0);
}

TEST(XorGame, AndTableIsChsh) { EXPECT_TRUE(xor_game(2, 2, {0, 0, 0, 1}).same_tables(chsh())); }

TEST(XorGame, ConstantTableWonClassically) {
  const Game g = xor_game(2, 2, {0, 0, 0, 0});
  EXPECT_EQ(winning_probability(g, {{0, 0}, {0, 0}}), 1.0);
  EXPECT_EQ(classical_value(g).value, 1.0);
}

TEST(XorGame, SizeMismatchRejected) {
  EXPECT_THROW(xor_game(2, 2, {0, 1, 0}), InvariantError);
  EXPECT_THROW(xor_game(2, 2, {0, 2, 0, 0}), InvariantError);
}

TEST(XorGame, HalfOfAnswerPairsWin) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nx = 1 + trial % 4, ny = 1 + (trial / 4) % 4;
    std::vector<int> f(nx * ny);
    for (auto& v : f) v = bit(rng);
    const Game g = xor_game(nx, ny, f);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        double wins = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) wins += g.lambda(x, y, a, b);
        EXPECT_EQ(wins, 2.0);
      }
  }
}

TEST(GameInvariants, DistributionMustBeNormalized) {
  try {
    Game("bad", 1, 2, 1, 1, {1.0, 1.0}, {0.45, 0.45});
    FAIL() << "expected an exception";
  } catch (const InvariantError& e) {
    EXPECT_EQ(e.field(), "distribution");
    EXPECT_NE(std::string(e.what()).find("distribution not normalized"), std::string::npos);
  }
}

TEST(GameInvariants, PredicateRangeAndSizes) {
  EXPECT_THROW(Game("bad", 1, 1, 1, 2, {0.5, 1.5}), InvariantError);
  EXPECT_THROW(Game("bad", 1, 1, 1, 2, {-0.1, 1.0}), InvariantError);
  EXPECT_THROW(Game("bad", 1, 1, 2, 2, {1.0, 1.0}), InvariantError);
  EXPECT_THROW(Game("bad", 1, 1, 1, 1, {1.0}, {0.5, 0.5}), InvariantError);
  EXPECT_NO_THROW(Game("ok", 1, 1, 1, 2, {0.25, 1.0}));
}

TEST(GameInvariants, CatalogGamesAreNormalized) {
  for (const Game& g : {chsh(), magic_square(), independent_set_game(Graph::cycle(5), 3), parallel_repetition(chsh(), 2)}) {
    double s = 0.0;
    for (double p : g.distribution()) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12) << g.name();
    for (double l : g.predicate()) {
      EXPECT_GE(l, 0.0);
      EXPECT_LE(l, 1.0);
    }
  }
}

TEST(ParallelRepetition, OneFoldIsIdentity) { EXPECT_TRUE(parallel_repetition(chsh(), 1).same_tables(chsh())); }

TEST(ParallelRepetition, TwoFoldChshShape) {
  const Game g = parallel_repetition(chsh(), 2);
  EXPECT_EQ(g.nx(), 4u);
  EXPECT_EQ(g.na(), 4u);
  EXPECT_EQ(g.winning_count(), 64u);
  // Spot-check the mixed-radix encoding: coordinates are (x1 x2), (a1 a2).
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
          const double expected = chsh().lambda(x >> 1, y >> 1, a >> 1, b >> 1) * chsh().lambda(x & 1, y & 1, a & 1, b & 1);
          EXPECT_EQ(g.lambda(x, y, a, b), expected);
        }
}

TEST(ParallelRepetition, Associative) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> dist = oracle::random_rational_distribution(rng, 4);
    Game base("g", 2, 2, 2, 2, oracle::random_boolean_game(rng, 2, 2).predicate(), dist);
    const Game left = parallel_repetition(parallel_repetition(base, 2), 1);
    const Game three = parallel_repetition(base, 3);
    const Game nested = product_game(parallel_repetition(base, 2), base);
    const Game nested_other = product_game(base, parallel_repetition(base, 2));
    EXPECT_TRUE(three.same_tables(nested));
    // Regrouping the product reorders floating-point multiplications, so only
    // the predicate is compared exactly.
    EXPECT_EQ(three.predicate(), nested_other.predicate());
    for (std::size_t i = 0; i < three.distribution().size(); ++i)
      EXPECT_NEAR(three.distribution()[i], nested_other.distribution()[i], 1e-16);
    EXPECT_TRUE(left.same_tables(parallel_repetition(base, 2)));
  }
}

TEST(ParallelRepetition, CapExceeded) { EXPECT_THROW(parallel_repetition(chsh(), 4, 1000), CapExceeded); }

TEST(IndependentSetGame, Semantics) {
  const Graph c5 = Graph::cycle(5);
  const Game g = independent_set_game(c5, 2);
  EXPECT_EQ(g.lambda(0, 0, 1, 1), 1.0);
  EXPECT_EQ(g.lambda(0, 0, 1, 2), 0.0);
  EXPECT_EQ(g.lambda(0, 1, 1, 1), 0.0);  // same vertex, different questions
  EXPECT_EQ(g.lambda(0, 1, 0, 1), 0.0);  // adjacent
  EXPECT_EQ(g.lambda(0, 1, 0, 2), 1.0);
}

TEST(IndependentSetGame, ClassicalValues) {
  const Graph c5 = Graph::cycle(5);
  // Witness {0, 2}: question i names vertex i's entry.
  EXPECT_EQ(winning_probability(independent_set_game(c5, 2), {{0, 2}, {0, 2}}), 1.0);
  EXPECT_EQ(classical_value_brute(independent_set_game(c5, 2)).value, 1.0);
  EXPECT_LT(classical_value_brute(independent_set_game(c5, 3)).value, 1.0);
  const Graph k3 = Graph::complete(3);
  EXPECT_EQ(classical_value_brute(independent_set_game(k3, 1)).value, 1.0);
}
