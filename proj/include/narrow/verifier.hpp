#pragma once

// Worst-case certification of the agent: the agent plays player A with its
// fixed policy while every opponent reply is explored.

#include <cstddef>
#include <string>
#include <vector>

#include "narrow/game.hpp"
#include "narrow/strategy.hpp"

namespace narrow {

struct GuaranteeReport {
  GameSpec spec;
  AgentMode mode = AgentMode::Constructive;
  int worst_net = 0;
  std::vector<EdgeRef> witness_line;  // opponent cuts reaching worst_net
  std::size_t states_visited = 0;
  // Checked at every visited agent/opponent turn; descriptions of failures.
  std::vector<std::string> invariant_failures;
};

struct VerifyOptions {
  // The endgame policy only plays optimal moves, so from the first Control
  // turn the guarantee is the solver value. Expanding it anyway is slow but
  // checks that claim.
  bool expand_control = false;
  std::size_t solver_budget = Solver::kDefaultBudget;
};

/// Minimum final net score for A over all opponent strategies. Constructive
/// mode throws UnsupportedSpec for uncovered specs and StrategyViolation
/// (message includes the opponent line) when the agent gets stuck.
GuaranteeReport guaranteed_score(const GameSpec& spec, AgentMode mode, const VerifyOptions& opts = {});

struct ScenarioResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> trace;
};

/// Known names: fig9_unmirrorable, fig10_zugzwang. Others throw
/// std::invalid_argument.
ScenarioResult scenario_check(const std::string& name);

std::vector<std::string> scenario_names();

}  // namespace narrow
