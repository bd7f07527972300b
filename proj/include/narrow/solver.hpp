#pragma once

// Exact optimal play for narrow Strings-and-Coins positions.
//
// Values are net scores relative to the player to move, counting only coins
// still on the board. A capturing cut keeps the mover, so its continuation is
// added; a non-capturing cut hands the remainder to the opponent, so its
// continuation is negated. The memo table is keyed on the component multiset
// up to reversal of each component.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "narrow/game.hpp"

namespace narrow {

class MemoOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  int value = 0;
  std::optional<EdgeRef> best;  // empty only for terminal positions
  std::size_t nodes = 0;        // keys newly evaluated by this call
};

class Solver {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 28;

  explicit Solver(std::size_t max_entries = kDefaultBudget);
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  SolveResult solve(const Position& p);

  /// Optimal mover-relative value of the coins left in `p`.
  int value(const Position& p);

  /// Value to the mover of cutting `e` and then continuing optimally.
  int move_value(const Position& p, EdgeRef e);

  std::vector<EdgeRef> principal_variation(const Position& p);

  std::size_t memo_size() const;
  std::size_t budget() const { return budget_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t budget_;
};

struct ScoreRow {
  int n = 0;
  std::optional<int> value;  // empty when the memo budget overflowed
  std::size_t nodes = 0;
};

/// Optimal first-player net score of the initial position for n = 1..n_max.
/// A memo overflow is reported on its row and the remaining rows still run.
std::vector<ScoreRow> score_table(Game game, Boundary boundary, int n_max,
                                  std::size_t max_entries = Solver::kDefaultBudget);

}  // namespace narrow
