#include "narrow/verifier.hpp"

#include <absl/container/flat_hash_map.h>

#include <climits>
#include <sstream>

#include "narrow/analysis.hpp"

namespace narrow {
namespace {

constexpr std::size_t kMaxFailuresKept = 16;

std::string line_text(const std::vector<EdgeRef>& line) {
  std::string out;
  for (EdgeRef e : line) {
    if (!out.empty()) out += ' ';
    out += to_string(e);
  }
  return out.empty() ? "(none)" : out;
}

std::string frame_key(const Position& p, Phase phase) {
  std::string key;
  key.reserve(2 * p.frame_size() + 1);
  key.push_back(static_cast<char>(phase));
  for (int c = 0; c < p.frame_size(); ++c) key.push_back(static_cast<char>(p.legs(c)));
  for (int c = 0; c + 1 < p.frame_size(); ++c) key.push_back(p.has_inner(c) ? 1 : 0);
  return key;
}

class Search {
 public:
  Search(const GameSpec& spec, AgentMode mode, const VerifyOptions& opts)
      : spec_(spec), mode_(mode), opts_(opts), solver_(opts.solver_budget) {}

  GuaranteeReport run() {
    const Position start = initial_position(spec_);
    AgentState state{spec_, Phase::Opening, std::nullopt, mode_};
    if (mode_ == AgentMode::Constructive) first_move(spec_);  // refuses uncovered specs

    GuaranteeReport report;
    report.spec = spec_;
    report.mode = mode_;
    report.worst_net = agent_turn(start, state);
    report.witness_line = witness(start, state);
    report.states_visited = visited_;
    report.invariant_failures = failures_;
    return report;
  }

 private:
  struct Entry {
    int value;
    EdgeRef worst;
  };

  void fail(const std::string& what, const Position& p) {
    if (failures_.size() < kMaxFailuresKept)
      failures_.push_back(what + " at " + p.describe() + " after " + line_text(line_));
  }

  bool shortcut(const AgentState& s) const {
    return s.phase == Phase::Control && !opts_.expand_control;
  }

  // Future net score for A, agent to move in `p`.
  int agent_turn(const Position& p, const AgentState& s) {
    ++visited_;
    if (s.phase == Phase::Mirroring && p.captured_net() < -1)
      fail("agent net below -1 before the endgame", p);
    std::pair<TurnPlan, AgentState> turn;
    try {
      turn = take_turn(p, s, solver_);
    } catch (const StrategyViolation& v) {
      throw StrategyViolation(std::string(v.what()) + "; opponent line: " + line_text(line_));
    }
    if (shortcut(turn.second)) return solver_.value(p);

    Position q = p;
    int gain = 0;
    for (EdgeRef e : turn.first.cuts) {
      const MoveOutcome out = apply_move(q, e);
      gain += static_cast<int>(out.captured.size());
      q = out.resulting;
    }
    if (q.terminal()) return gain;
    return gain + opponent_node(q, turn.second);
  }

  // Future net score for A, opponent to move in `p`.
  int opponent_node(const Position& p, const AgentState& s) {
    const std::string key = frame_key(p, s.phase);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
    ++visited_;
    if (s.phase == Phase::Mirroring) {
      if (!base_graph_symmetric(p)) fail("asymmetric base graph on the opponent's turn", p);
      if (!pendants_one_sided(p)) fail("pendants on both sides on the opponent's turn", p);
    }

    Entry best{INT_MAX, {}};
    for (EdgeRef e : legal_moves(p)) {
      const MoveOutcome out = apply_move(p, e);
      int v = -static_cast<int>(out.captured.size());
      line_.push_back(e);
      if (out.resulting.terminal()) {
        // nothing left
      } else if (out.extra_turn) {
        v += opponent_node(out.resulting, s);
      } else {
        v += agent_turn(out.resulting, after_opponent_cut(s, p, e));
      }
      line_.pop_back();
      if (v < best.value) best = {v, e};
    }
    memo_.emplace(key, best);
    return best.value;
  }

  // Replays the worst line; past the endgame shortcut both sides play the
  // solver's moves.
  std::vector<EdgeRef> witness(Position p, AgentState s) {
    std::vector<EdgeRef> line;
    bool exact = false;
    while (!p.terminal()) {
      if (p.to_move() == Player::A) {
        auto [plan, next] = take_turn(p, s, solver_);
        if (shortcut(next)) exact = true;
        for (EdgeRef e : plan.cuts) p = apply_move(p, e).resulting;
        s = next;
        continue;
      }
      EdgeRef e;
      if (exact) {
        e = *solver_.solve(p).best;
      } else {
        e = memo_.at(frame_key(p, s.phase)).worst;
      }
      line.push_back(e);
      const MoveOutcome out = apply_move(p, e);
      if (!out.extra_turn && !out.resulting.terminal()) s = after_opponent_cut(s, p, e);
      p = out.resulting;
    }
    return line;
  }

  GameSpec spec_;
  AgentMode mode_;
  VerifyOptions opts_;
  Solver solver_;
  absl::flat_hash_map<std::string, Entry> memo_;
  std::vector<EdgeRef> line_;
  std::vector<std::string> failures_;
  std::size_t visited_ = 0;
};

ScenarioResult fig9() {
  ScenarioResult r{"fig9_unmirrorable", false, {}};
  const Position p = Position::from_components({{1, 1, 1, 0, 1, 1, 1}});
  const EdgeRef e = EdgeRef::inner(2);
  const EdgeRef e_mirror = mirror_edge(p, e);
  r.trace.push_back("position " + p.describe());
  r.trace.push_back("e = " + to_string(e) + ", mirror e' = " + to_string(e_mirror));
  const auto ch = chain_of(p, e);
  const bool same_chain = ch && ch->contains(e_mirror);
  r.trace.push_back(std::string("e and e' share a chain: ") + (same_chain ? "yes" : "no"));
  const MoveOutcome first = apply_move(p, e);
  const MoveOutcome second = apply_move(first.resulting, e_mirror);
  std::ostringstream os;
  os << "cutting e' captures " << second.captured.size() << " coin(s)";
  for (int c : second.captured) os << " #" << c;
  os << ", extra turn: " << (second.extra_turn ? "yes" : "no");
  r.trace.push_back(os.str());
  r.passed = same_chain && first.captured.empty() && second.captured == std::vector<int>{3} &&
             second.extra_turn;
  return r;
}

ScenarioResult fig10() {
  ScenarioResult r{"fig10_zugzwang", false, {}};
  const Position p = Position::from_components({{1, 0, 1, 0, 1, 0, 1}}, Player::B);
  const EdgeRef e = EdgeRef::inner(2);
  r.trace.push_back("position " + p.describe());
  const MoveOutcome out = apply_move(p, e);
  r.trace.push_back("opponent cuts " + to_string(e) + " -> " + out.resulting.describe());
  Solver solver;
  const SolveResult s = solver.solve(out.resulting);
  r.trace.push_back("value for the player to move: " + std::to_string(s.value) + " (best " +
                    to_string(*s.best) + ")");
  r.passed = out.captured.empty() && !out.extra_turn && s.value < 0;
  return r;
}

}  // namespace

GuaranteeReport guaranteed_score(const GameSpec& spec, AgentMode mode, const VerifyOptions& opts) {
  spec.validate();
  return Search(spec, mode, opts).run();
}

std::vector<std::string> scenario_names() { return {"fig9_unmirrorable", "fig10_zugzwang"}; }

ScenarioResult scenario_check(const std::string& name) {
  if (name == "fig9_unmirrorable") return fig9();
  if (name == "fig10_zugzwang") return fig10();
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace narrow
