#include "narrow/strategy.hpp"

#include <algorithm>

namespace narrow {

std::string to_string(Phase p) {
  switch (p) {
    case Phase::Opening: return "opening";
    case Phase::Mirroring: return "mirroring";
    case Phase::Control: return "control";
  }
  return "?";
}

std::string to_string(AgentMode m) {
  return m == AgentMode::Constructive ? "constructive" : "solver";
}

AgentMode parse_mode(const std::string& s) {
  if (s == "constructive") return AgentMode::Constructive;
  if (s == "solver" || s == "solver-assisted") return AgentMode::SolverAssisted;
  throw std::invalid_argument("unknown agent mode '" + s + "'");
}

std::string to_string(CutRole r) {
  switch (r) {
    case CutRole::Good: return "good";
    case CutRole::MediumMiddle: return "medium-middle";
    case CutRole::MediumOuter: return "medium-outer";
    case CutRole::LongChain: return "long-chain";
    case CutRole::BadShort: return "bad-short";
    case CutRole::Pendant: return "pendant";
  }
  return "?";
}

std::string to_string(DealChoice c) {
  return c == DealChoice::TakeBoth ? "take-both" : "double-deal";
}

bool strategy_supported(const GameSpec& spec) {
  if (spec.n < 1) return false;
  if (spec.game == Game::Triangles) return spec.boundary == Boundary::Closed && spec.n != 2;
  return spec.n >= 4 && spec.n % 2 == 0;
}

EdgeRef first_move(const GameSpec& spec) {
  if (!strategy_supported(spec))
    throw UnsupportedSpec("no covered strategy for " + to_string(spec));
  if (spec.game == Game::Triangles) {
    // Coin n-1 is the middle of 2n-1 coins; it carries a leg iff n is odd.
    if (spec.n % 2 == 1) return EdgeRef::leg(spec.n - 1);
    return EdgeRef::inner(spec.n - 1);
  }
  return EdgeRef::inner(spec.n / 2 - 1);
}

namespace {

int coin_mirror(const Position& p, int c) { return p.frame_size() - 1 - c; }

// The only string of the leftmost available coin.
EdgeRef first_capture(const Position& p) {
  const int coin = available_coins(p).front();
  if (p.legs(coin) > 0) return EdgeRef::leg(coin);
  if (coin > 0 && p.has_inner(coin - 1)) return EdgeRef::inner(coin - 1);
  return EdgeRef::inner(coin);
}

}  // namespace

bool base_graph_symmetric(const Position& p) {
  const Decomposition d = decompose(p);
  for (EdgeRef e : d.base_edges) {
    const EdgeRef m = mirror_edge(p, e);
    if (!d.is_base(m)) return false;
    if (e.kind == EdgeKind::Leg && p.legs(e.coin) != p.legs(m.coin)) return false;
  }
  return true;
}

bool pendants_one_sided(const Position& p) {
  const Decomposition d = decompose(p);
  const int m = p.frame_size();
  auto twin = [&](int c) {
    const int t = coin_mirror(p, c);
    if (!d.is_pendant_coin(t) || p.legs(t) != p.legs(c)) return false;
    const bool left = c > 0 && p.has_inner(c - 1);
    const bool right = c + 1 < m && p.has_inner(c);
    const bool t_left = t > 0 && p.has_inner(t - 1);
    const bool t_right = t + 1 < m && p.has_inner(t);
    return left == t_right && right == t_left;
  };
  bool left = false;
  bool right = false;
  for (int c : d.pendant_coins) {
    if (twin(c)) continue;
    const int t = coin_mirror(p, c);
    if (c < t) left = true;
    if (c > t) right = true;
  }
  return !(left && right);
}

OpponentCut observe_opponent_cut(const Position& before, EdgeRef e) {
  OpponentCut cut{e, CutRole::Pendant, std::nullopt};
  const Decomposition d = decompose(before);
  if (!d.is_base(e)) return cut;
  const Chain ch = *chain_of(before, e);
  const bool touches_pendant = incident_to_pendant(before, d, e);
  const EdgeRef mirrored = mirror_edge(before, e);

  if (e.kind == EdgeKind::Leg && before.legs(e.coin) >= 2) {
    cut.role = CutRole::Good;
    cut.reply = mirrored;
    return cut;
  }
  switch (ch.category) {
    case ChainCategory::Long:
      cut.role = CutRole::LongChain;
      return cut;
    case ChainCategory::Short:
      cut.role = touches_pendant ? CutRole::BadShort : CutRole::Good;
      if (!touches_pendant) cut.reply = mirrored;
      return cut;
    case ChainCategory::Medium:
      break;
  }
  if (ch.middle() == e) {
    cut.role = touches_pendant ? CutRole::MediumMiddle : CutRole::Good;
    cut.reply = mirrored;
    return cut;
  }
  cut.role = CutRole::MediumOuter;
  if (const auto image = chain_of(before, mirrored); image && image->category == ChainCategory::Medium)
    cut.reply = image->middle();
  return cut;
}

AgentState after_opponent_cut(const AgentState& state, const Position& before, EdgeRef e) {
  AgentState next = state;
  if (state.phase == Phase::Mirroring) next.opp_last_base_move = observe_opponent_cut(before, e);
  return next;
}

Position after_taking_pair(const Position& p, const DoubleDealOpportunity& opp) {
  Position q = apply_move(p, opp.x).resulting;
  if (q.has_edge(opp.y)) q = apply_move(q, opp.y).resulting;
  return q;
}

DealChoice double_deal_choice(const Position& p, const DoubleDealOpportunity& opp,
                              Solver& solver) {
  const Position rest = after_taking_pair(p, opp);
  const int v = rest.terminal() ? 0 : solver.value(rest);
  const int take = 2 + v;
  const int deal = -(2 + v);
  if (std::max(take, deal) < 0) throw std::logic_error("double-deal bound broken");
  return take >= deal ? DealChoice::TakeBoth : DealChoice::DoubleDeal;
}

EdgeRef control_cut(const Position& p, Solver& solver) {
  EdgeRef candidate;
  const auto deals = find_double_deals(p);
  if (!deals.empty()) {
    const auto& opp = deals.front();
    candidate = double_deal_choice(p, opp, solver) == DealChoice::TakeBoth ? opp.x : opp.y;
  } else if (!available_coins(p).empty()) {
    candidate = first_capture(p);
  } else {
    return *solver.solve(p).best;
  }
  const int target = solver.value(p);
  if (solver.move_value(p, candidate) < target) return *solver.solve(p).best;
  return candidate;
}

namespace {

TurnPlan play_control(Position p, Solver& solver) {
  TurnPlan plan;
  const Player me = p.to_move();
  while (!p.terminal() && p.to_move() == me) {
    const EdgeRef e = control_cut(p, solver);
    plan.cuts.push_back(e);
    p = apply_move(p, e).resulting;
  }
  return plan;
}

bool enters_control(const Position& p, const OpponentCut& cut) {
  switch (cut.role) {
    case CutRole::LongChain:
    case CutRole::BadShort:
    case CutRole::Pendant:
      return true;
    case CutRole::Good:
      if (!find_double_deals(p).empty()) return true;
      break;
    case CutRole::MediumMiddle:
    case CutRole::MediumOuter:
      break;
  }
  return longest_capturable_run(p) >= 3;
}

[[noreturn]] void violation(const std::string& why, const Position& p, const OpponentCut& cut) {
  throw StrategyViolation(why + " after opponent cut " + to_string(cut.edge) + " (" +
                          to_string(cut.role) + ") in " + p.describe());
}

TurnPlan play_mirroring(Position p, const OpponentCut& cut) {
  TurnPlan plan;
  while (!p.terminal() && !available_coins(p).empty()) {
    const EdgeRef e = first_capture(p);
    plan.cuts.push_back(e);
    p = apply_move(p, e).resulting;
  }
  if (p.terminal()) return plan;
  if (!cut.reply) violation("no mirror reply", p, cut);
  const EdgeRef r = *cut.reply;
  if (!p.has_edge(r)) violation("mirror reply " + to_string(r) + " is gone", p, cut);
  if (classify_edge_direct(p, r) != EdgeClass::Good)
    violation("mirror reply " + to_string(r) + " is bad", p, cut);
  const MoveOutcome out = apply_move(p, r);
  if (!out.captured.empty()) violation("mirror reply " + to_string(r) + " captures", p, cut);
  if (!base_graph_symmetric(out.resulting))
    violation("mirror reply " + to_string(r) + " leaves an asymmetric base graph", p, cut);
  plan.cuts.push_back(r);
  return plan;
}

}  // namespace

std::pair<TurnPlan, AgentState> take_turn(const Position& p, const AgentState& state,
                                          Solver& solver) {
  if (p.terminal()) throw std::invalid_argument("game is over");
  AgentState next = state;

  if (state.mode == AgentMode::SolverAssisted || state.phase == Phase::Control) {
    next.phase = Phase::Control;
    next.opp_last_base_move.reset();
    return {play_control(p, solver), next};
  }

  if (state.phase == Phase::Opening) {
    if (p != initial_position(state.spec))
      throw StrategyViolation("the constructive agent only plays first");
    TurnPlan plan{{first_move(state.spec)}};
    next.phase = Phase::Mirroring;
    return {plan, next};
  }

  if (!state.opp_last_base_move) throw StrategyViolation("no opponent cut recorded");
  const OpponentCut& cut = *state.opp_last_base_move;
  if (enters_control(p, cut)) {
    next.phase = Phase::Control;
    next.opp_last_base_move.reset();
    return {play_control(p, solver), next};
  }
  next.opp_last_base_move.reset();
  return {play_mirroring(p, cut), next};
}

}  // namespace narrow
