#pragma once

// The constructive first-player agent: center opening, quasi-mirroring of the
// opponent's base-graph cuts (with the medium-chain exception), and an exact
// endgame once the opponent opens a long chain or hands over a
// double-dealing chance.
//
// The agent is Markov in (position, phase, classified last opponent cut).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "narrow/analysis.hpp"
#include "narrow/game.hpp"
#include "narrow/solver.hpp"

namespace narrow {

enum class Phase : std::uint8_t { Opening, Mirroring, Control };
enum class AgentMode : std::uint8_t { Constructive, SolverAssisted };

std::string to_string(Phase p);
std::string to_string(AgentMode m);
AgentMode parse_mode(const std::string& s);

/// Raised when the mirroring rules have no legal, good, symmetry-restoring
/// reply. This is how unmirrorable opponent cuts surface.
class StrategyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The constructive strategy covers closed Triangles with n != 2 and Boxes
/// of either boundary with even n >= 4.
class UnsupportedSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool strategy_supported(const GameSpec& spec);

/// How the opponent's turn-ending cut looked from the position it was made in.
enum class CutRole : std::uint8_t {
  Good,          // short chain or medium middle, no pendant contact
  MediumMiddle,  // middle of a medium chain touching a pendant
  MediumOuter,   // an outer edge of a medium chain
  LongChain,     // opens a long chain
  BadShort,      // short chain edge touching a pendant
  Pendant,       // not a base-graph edge at all
};

std::string to_string(CutRole r);

struct OpponentCut {
  EdgeRef edge;
  CutRole role = CutRole::Good;
  std::optional<EdgeRef> reply;  // the mirroring answer, when one exists

  friend bool operator==(const OpponentCut&, const OpponentCut&) = default;
};

struct AgentState {
  GameSpec spec;
  Phase phase = Phase::Opening;
  std::optional<OpponentCut> opp_last_base_move;
  AgentMode mode = AgentMode::Constructive;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Cuts of one agent turn. Every cut but the last captures.
struct TurnPlan {
  std::vector<EdgeRef> cuts;
};

/// Throws UnsupportedSpec outside the covered specs.
EdgeRef first_move(const GameSpec& spec);

/// Classifies the opponent cut `e` made in `before` and precomputes the reply.
OpponentCut observe_opponent_cut(const Position& before, EdgeRef e);

/// True when the base graph, leg weights included, equals its mirror image.
bool base_graph_symmetric(const Position& p);

/// True when the pendant coins without a mirror twin (same legs, same inner
/// strings, mirrored) lie on at most one side of the strip's center.
bool pendants_one_sided(const Position& p);

enum class DealChoice : std::uint8_t { TakeBoth, DoubleDeal };

std::string to_string(DealChoice c);

/// The position left once x and y are cut and the pair is taken, with the
/// same player still to move.
Position after_taking_pair(const Position& p, const DoubleDealOpportunity& opp);

/// Take the pair iff 2 + v >= -(2 + v), where v is the mover's optimal value
/// of what remains after the pair is taken.
DealChoice double_deal_choice(const Position& p, const DoubleDealOpportunity& opp,
                              Solver& solver);

/// Plans the agent's whole turn in `p` (the agent must be to move) and
/// returns the updated state. Constructive mode throws UnsupportedSpec at the
/// opening of an uncovered spec and StrategyViolation when no rule applies.
/// SolverAssisted mode plays the exact endgame policy from the first move.
std::pair<TurnPlan, AgentState> take_turn(const Position& p, const AgentState& state,
                                          Solver& solver);

/// Records the opponent's turn-ending cut `e`, made in `before`.
AgentState after_opponent_cut(const AgentState& state, const Position& before, EdgeRef e);

/// One cut of the exact endgame policy: a double-deal decision when one is on
/// offer, else a free capture, else the solver's move. A candidate that is
/// not optimal is replaced by the solver's choice.
EdgeRef control_cut(const Position& p, Solver& solver);

}  // namespace narrow
