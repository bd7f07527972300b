#pragma once

#include <random>
#include <set>
#include <vector>

#include "narrow/game.hpp"

namespace narrow::testing {

inline std::vector<GameSpec> four_variants(int n) {
  return {{Game::Boxes, Boundary::Closed, n},
          {Game::Boxes, Boundary::Open, n},
          {Game::Triangles, Boundary::Closed, n},
          {Game::Triangles, Boundary::Open, n}};
}

inline EdgeRef random_move(const Position& p, std::mt19937_64& rng) {
  const auto moves = legal_moves(p);
  return moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
}

/// Every position on one random line of play, initial and terminal included.
inline std::vector<Position> random_line(Position p, std::mt19937_64& rng) {
  std::vector<Position> line{p};
  while (!p.terminal()) {
    p = apply_move(p, random_move(p, rng)).resulting;
    line.push_back(p);
  }
  return line;
}

/// All positions reachable from the initial position, distinct by frame.
inline std::vector<Position> reachable(const GameSpec& spec) {
  std::set<std::string> seen;
  std::vector<Position> out;
  std::vector<Position> stack{initial_position(spec)};
  while (!stack.empty()) {
    Position p = stack.back();
    stack.pop_back();
    if (!seen.insert(p.describe()).second) continue;
    out.push_back(p);
    for (EdgeRef e : legal_moves(p)) stack.push_back(apply_move(p, e).resulting);
  }
  return out;
}

}  // namespace narrow::testing
