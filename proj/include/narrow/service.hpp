#pragma once

// In-memory game sessions for human-vs-engine play and their HTTP front end.
//
//   POST /games                 {spec, engine_role, engine_mode} -> {id, state, engine_replies}
//   POST /games/{id}/moves      {edge}                           -> {state, engine_replies}
//   GET  /games/{id}                                             -> {id, state}
//   GET  /games/{id}/analysis                                    -> chains, labels, double deals
//
// Errors are {code, message}. Each session is serialized by its own mutex;
// the engine's solver is shared under a separate lock.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "narrow/board_io.hpp"
#include "narrow/game.hpp"
#include "narrow/solver.hpp"
#include "narrow/strategy.hpp"

namespace httplib {
class Server;
}

namespace narrow {

enum class EngineRole : std::uint8_t { First, Second, None };

std::string to_string(EngineRole r);
EngineRole parse_engine_role(const std::string& s);

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  nlohmann::ordered_json to_json() const;

 private:
  int status_;
  std::string code_;
};

/// Chains, good/bad labels and double-deal chances in board coordinates.
nlohmann::ordered_json analysis_json(const PrimalBoard& board);

class GameService {
 public:
  explicit GameService(std::size_t solver_budget = Solver::kDefaultBudget);
  ~GameService();

  nlohmann::ordered_json create(const nlohmann::json& request);
  nlohmann::ordered_json submit_move(const std::string& id, const nlohmann::json& request);
  nlohmann::ordered_json fetch(const std::string& id);
  nlohmann::ordered_json analysis(const std::string& id);

  std::size_t session_count() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  nlohmann::ordered_json engine_turns(Session& s);

  mutable std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;

  std::mutex solver_mu_;
  Solver solver_;
};

/// Registers the endpoints on `server`.
void install_routes(httplib::Server& server, GameService& service);

}  // namespace narrow
