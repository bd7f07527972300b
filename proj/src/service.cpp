#include "narrow/service.hpp"

#include <httplib.h>

#include "narrow/analysis.hpp"

namespace narrow {

using ojson = nlohmann::ordered_json;

std::string to_string(EngineRole r) {
  switch (r) {
    case EngineRole::First: return "first";
    case EngineRole::Second: return "second";
    case EngineRole::None: return "none";
  }
  return "?";
}

EngineRole parse_engine_role(const std::string& s) {
  if (s == "first") return EngineRole::First;
  if (s == "second") return EngineRole::Second;
  if (s == "none") return EngineRole::None;
  throw std::invalid_argument("unknown engine role '" + s + "' (expected first|second|none)");
}

ojson ServiceError::to_json() const {
  ojson j;
  j["code"] = code_;
  j["message"] = what();
  return j;
}

namespace {

ServiceError bad_request(const std::string& msg) { return {400, "bad_request", msg}; }

ojson edges_json(const PrimalBoard& board, EdgeRef e) {
  // Every undrawn board edge standing for string e.
  ojson out = ojson::array();
  for (PrimalEdgeId id : legal_edges(board))
    if (primal_to_dual(board.spec, id) == e) out.push_back(to_string(id));
  return out;
}

}  // namespace

ojson analysis_json(const PrimalBoard& board) {
  const Position p = position_of(board);
  const Decomposition d = decompose(p);
  ojson j;
  j["chains"] = ojson::array();
  for (const Chain& ch : chains(p)) {
    ojson c;
    c["length"] = ch.length;
    c["category"] = to_string(ch.category);
    c["strings"] = ojson::array();
    c["edges"] = ojson::array();
    for (EdgeRef e : ch.edges) {
      c["strings"].push_back(to_string(e));
      for (const auto& id : edges_json(board, e)) c["edges"].push_back(id);
    }
    j["chains"].push_back(c);
  }
  j["labels"] = ojson::array();
  if (!p.terminal()) {
    for (PrimalEdgeId id : legal_edges(board)) {
      const EdgeRef e = primal_to_dual(board.spec, id);
      ojson l;
      l["edge"] = to_string(id);
      l["string"] = to_string(e);
      l["base"] = d.is_base(e);
      l["class"] = to_string(classify_edge_direct(p, e));
      if (d.is_base(e)) l["structural"] = to_string(classify_edge_structural(p, e));
      j["labels"].push_back(l);
    }
  }
  j["double_deals"] = ojson::array();
  for (const auto& opp : find_double_deals(p)) {
    ojson o;
    o["x"] = edges_json(board, opp.x);
    o["y"] = edges_json(board, opp.y);
    o["coins"] = {opp.capturable, opp.partner};
    j["double_deals"].push_back(o);
  }
  return j;
}

struct GameService::Session {
  std::mutex mu;
  std::string id;
  PrimalBoard board;
  EngineRole role = EngineRole::None;
  AgentState agent;

  std::optional<Player> engine_player() const {
    if (role == EngineRole::First) return Player::A;
    if (role == EngineRole::Second) return Player::B;
    return std::nullopt;
  }
};

GameService::GameService(std::size_t solver_budget) : solver_(solver_budget) {}
GameService::~GameService() = default;

std::size_t GameService::session_count() const {
  std::lock_guard lock(sessions_mu_);
  return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "no game with id '" + id + "'");
  return it->second;
}

ojson GameService::engine_turns(Session& s) {
  ojson replies = ojson::array();
  const auto me = s.engine_player();
  if (!me) return replies;
  while (true) {
    const Position p = position_of(s.board);
    if (p.terminal() || p.to_move() != *me) break;
    std::pair<TurnPlan, AgentState> turn;
    {
      std::lock_guard lock(solver_mu_);
      try {
        turn = take_turn(p, s.agent, solver_);
      } catch (const StrategyViolation&) {
        // Play on exactly rather than stall the session.
        AgentState exact = s.agent;
        exact.phase = Phase::Control;
        turn = take_turn(p, exact, solver_);
      }
    }
    for (EdgeRef e : turn.first.cuts) {
      const PrimalMove mv = play_string(s.board, e);
      s.board = mv.board;
      replies.push_back(to_string(mv.drawn));
    }
    s.agent = turn.second;
  }
  return replies;
}

ojson GameService::create(const nlohmann::json& request) {
  auto s = std::make_shared<Session>();
  GameSpec spec;
  AgentMode mode = AgentMode::SolverAssisted;
  try {
    spec = spec_from_json(request.at("spec"));
    s->role = parse_engine_role(request.value("engine_role", std::string("second")));
    mode = parse_mode(request.value("engine_mode", std::string("solver")));
  } catch (const nlohmann::json::exception& e) {
    throw bad_request(e.what());
  } catch (const std::invalid_argument& e) {
    throw bad_request(e.what());
  }
  if (mode == AgentMode::Constructive) {
    if (s->role == EngineRole::Second)
      throw ServiceError(422, "unsupported", "the constructive engine only plays first");
    if (s->role == EngineRole::First && !strategy_supported(spec))
      throw ServiceError(422, "unsupported", "no covered strategy for " + to_string(spec));
  }
  s->board = initial_board(spec);
  s->agent = AgentState{spec, Phase::Opening, std::nullopt, mode};

  ojson replies;
  {
    std::lock_guard lock(s->mu);
    replies = engine_turns(*s);
  }
  {
    std::lock_guard lock(sessions_mu_);
    s->id = std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  ojson j;
  j["id"] = s->id;
  j["state"] = to_json(s->board);
  j["engine_replies"] = replies;
  return j;
}

ojson GameService::submit_move(const std::string& id, const nlohmann::json& request) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  std::string name;
  try {
    name = request.at("edge").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw bad_request(e.what());
  }
  const Position before = position_of(s->board);
  if (before.terminal()) throw ServiceError(409, "game_over", "the game is over");
  if (s->engine_player() == before.to_move())
    throw ServiceError(409, "not_your_turn", "it is the engine's turn");

  PrimalMove mv;
  try {
    mv = play_edge(s->board, parse_primal_edge(s->board.spec, name));
  } catch (const BoardError& e) {
    throw ServiceError(422, "illegal_move", e.what());
  }
  s->board = mv.board;
  const Position after = position_of(s->board);
  if (s->engine_player() && !after.terminal() && after.to_move() == *s->engine_player())
    s->agent = after_opponent_cut(s->agent, before, primal_to_dual(s->board.spec, mv.drawn));

  ojson replies = engine_turns(*s);
  ojson j;
  j["state"] = to_json(s->board);
  j["engine_replies"] = std::move(replies);
  return j;
}

ojson GameService::fetch(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  ojson j;
  j["id"] = s->id;
  j["state"] = to_json(s->board);
  return j;
}

ojson GameService::analysis(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return analysis_json(s->board);
}

void install_routes(httplib::Server& server, GameService& service) {
  auto respond = [](httplib::Response& res, auto&& body) {
    try {
      res.set_content(body().dump(), "application/json");
    } catch (const ServiceError& e) {
      res.status = e.status();
      res.set_content(e.to_json().dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(ServiceError(500, "internal", e.what()).to_json().dump(), "application/json");
    }
  };
  auto parse_body = [](const httplib::Request& req) {
    auto j = nlohmann::json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw bad_request("body is not a JSON object");
    return j;
  };

  server.Post("/games", [&, respond, parse_body](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.create(parse_body(req)); });
  });
  server.Post(R"(/games/([^/]+)/moves)",
              [&, respond, parse_body](const httplib::Request& req, httplib::Response& res) {
                respond(res, [&] { return service.submit_move(req.matches[1], parse_body(req)); });
              });
  server.Get(R"(/games/([^/]+)/analysis)", [&, respond](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.analysis(req.matches[1]); });
  });
  server.Get(R"(/games/([^/]+))", [&, respond](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.fetch(req.matches[1]); });
  });
}

}  // namespace narrow
