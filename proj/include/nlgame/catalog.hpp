#pragma once

// Named games and strategies available from the command line.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlgame/game.hpp"
#include "nlgame/graph.hpp"
#include "nlgame/quantum.hpp"

namespace nlgame {

struct GameEntry {
  std::string name;
  std::string description;
  std::function<Game()> make;
};

inline const std::vector<GameEntry>& game_catalog() {
  static const std::vector<GameEntry> entries = {
      {"chsh", "CHSH: a xor b == x and y, uniform questions", [] { return chsh(); }},
      {"chsh-2", "two-fold parallel repetition of CHSH", [] { return parallel_repetition(chsh(), 2); }},
      {"magic-square", "Mermin-Peres magic square, 4 answers per player", [] { return magic_square(); }},
      {"isg-c5-t2", "independent-set game on the 5-cycle, t = 2", [] { return independent_set_game(Graph::cycle(5), 2); }},
      {"isg-c5-t3", "independent-set game on the 5-cycle, t = 3", [] { return independent_set_game(Graph::cycle(5), 3); }},
      {"isg-k2-t1", "independent-set game on a single edge, t = 1", [] { return independent_set_game(Graph::complete(2), 1); }},
      {"xor-constant", "XOR game with f = 0 on 2 x 2 questions", [] { return xor_game(2, 2, {0, 0, 0, 0}, "xor-constant"); }},
      {"all-ones", "2 x 2 x 2 x 2 game that always wins", [] { return all_ones_game(2, 2, 2, 2); }},
  };
  return entries;
}

inline std::optional<Game> catalog_game(std::string_view name) {
  for (const auto& e : game_catalog())
    if (e.name == name) return e.make();
  return std::nullopt;
}

struct StrategyEntry {
  std::string name;
  std::string game;  // catalog game it plays
  std::string description;
  std::function<QuantumStrategy()> make;
};

inline const std::vector<StrategyEntry>& strategy_catalog() {
  static const std::vector<StrategyEntry> entries = {
      {"chsh-optimal", "chsh", "qubit strategy on |Phi+> reaching 1/2 + 1/(2 sqrt 2)", [] { return chsh_optimal_strategy(); }},
      {"chsh-classical", "chsh", "a = b = 0 as one-dimensional projectors",
       [] { return classical_as_quantum(chsh(), {{0, 0}, {0, 0}}); }},
      {"mermin-peres", "magic-square", "two-qubit observable square on two |Phi+> pairs", [] { return magic_square_strategy(); }},
      {"xor-constant-classical", "xor-constant", "a = b = 0 as one-dimensional projectors",
       [] { return classical_as_quantum(xor_game(2, 2, {0, 0, 0, 0}), {{0, 0}, {0, 0}}); }},
  };
  return entries;
}

inline std::optional<QuantumStrategy> catalog_strategy(std::string_view name) {
  for (const auto& e : strategy_catalog())
    if (e.name == name) return e.make();
  return std::nullopt;
}

}  // namespace nlgame
