// narrowdots: solve, tabulate, verify, analyze, play and serve narrow
// Dots-and-Boxes / Dots-and-Triangles.

#include <CLI11.hpp>
#include <httplib.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "narrow/analysis.hpp"
#include "narrow/board_io.hpp"
#include "narrow/service.hpp"
#include "narrow/solver.hpp"
#include "narrow/strategy.hpp"
#include "narrow/verifier.hpp"

using namespace narrow;
using ojson = nlohmann::ordered_json;

namespace {

struct SpecArgs {
  std::string game = "boxes";
  std::string boundary = "closed";
  int n = 1;

  GameSpec spec() const {
    GameSpec s{parse_game(game), parse_boundary(boundary), n};
    s.validate();
    return s;
  }
};

void add_spec_options(CLI::App* cmd, SpecArgs& args) {
  cmd->add_option("--game", args.game, "boxes | triangles")->check(CLI::IsMember({"boxes", "triangles"}));
  cmd->add_option("--boundary", args.boundary, "open | closed")->check(CLI::IsMember({"open", "closed"}));
  cmd->add_option("--n", args.n, "board length")->check(CLI::PositiveNumber);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string pv_text(const std::vector<EdgeRef>& line) {
  std::string s;
  for (EdgeRef e : line) s += (s.empty() ? "" : " ") + to_string(e);
  return s;
}

int cmd_solve(const SpecArgs& args, const std::string& state, std::size_t budget) {
  const PrimalBoard board = state.empty() ? initial_board(args.spec()) : decode(state);
  const Position p = position_of(board);
  Solver solver(budget);
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult r = solver.solve(p);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "position " << encode(board) << '\n';
  std::cout << "value " << r.value << '\n';
  if (r.best) std::cout << "best " << to_string(*r.best) << " (" << to_string(dual_to_primal(board, *r.best)) << ")\n";
  std::cout << "nodes " << r.nodes << '\n';
  std::cout << "pv " << pv_text(solver.principal_variation(p)) << '\n';
  std::cout << "time_ms " << static_cast<long long>(ms) << '\n';
  return 0;
}

int cmd_table(const SpecArgs& args, const std::string& out, std::size_t budget) {
  const GameSpec spec = args.spec();
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = score_table(spec.game, spec.boundary, spec.n, budget);
  std::ostringstream text;
  bool overflow = false;
  for (const auto& row : rows) {
    if (row.value) {
      text << row.n << ',' << *row.value << '\n';
    } else {
      text << row.n << ",overflow\n";
      overflow = true;
    }
  }
  std::cout << text.str();
  write_out(out, text.str());
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "table " << to_string(spec.game) << ' ' << to_string(spec.boundary) << " n<=" << spec.n
            << " in " << s << "s\n";
  return overflow ? 1 : 0;
}

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty --n list");
  return out;
}

int cmd_verify(int theorem, const std::string& n_list, const std::string& boundary,
               const std::string& mode_name, const std::string& out, bool expand) {
  const AgentMode mode = parse_mode(mode_name);
  const int required = theorem == 1 ? 1 : 0;
  std::vector<GameSpec> specs;
  for (int n : parse_n_list(n_list)) {
    if (theorem == 1) {
      specs.push_back({Game::Triangles, Boundary::Closed, n});
    } else {
      if (boundary != "open") specs.push_back({Game::Boxes, Boundary::Closed, n});
      if (boundary != "closed") specs.push_back({Game::Boxes, Boundary::Open, n});
    }
  }

  ojson report;
  report["theorem"] = theorem;
  report["mode"] = to_string(mode);
  report["required_min"] = required;
  report["results"] = ojson::array();
  bool all_hold = true;
  VerifyOptions opts;
  opts.expand_control = expand;
  for (const GameSpec& spec : specs) {
    ojson r;
    r["spec"] = spec_to_json(spec);
    try {
      const GuaranteeReport g = guaranteed_score(spec, mode, opts);
      const bool holds = g.worst_net >= required && g.invariant_failures.empty();
      all_hold = all_hold && holds;
      r["worst_net"] = g.worst_net;
      r["holds"] = holds;
      r["witness_line"] = ojson::array();
      for (EdgeRef e : g.witness_line) r["witness_line"].push_back(to_string(e));
      r["states_visited"] = g.states_visited;
      r["invariant_failures"] = g.invariant_failures;
      std::cout << to_string(spec) << ' ' << to_string(mode) << " worst_net=" << g.worst_net
                << " required>=" << required << ' ' << (holds ? "HOLDS" : "FAILS")
                << " states=" << g.states_visited << " witness=" << pv_text(g.witness_line) << '\n';
      for (const auto& f : g.invariant_failures) std::cout << "  invariant: " << f << '\n';
    } catch (const UnsupportedSpec& e) {
      all_hold = false;
      Solver solver;
      const int v = solver.value(initial_position(spec));
      r["refused"] = e.what();
      r["solver_value"] = v;
      std::cout << to_string(spec) << " refused: excluded case (" << e.what() << "); solver value " << v
                << '\n';
    } catch (const StrategyViolation& e) {
      all_hold = false;
      r["violation"] = e.what();
      std::cout << to_string(spec) << " strategy violation: " << e.what() << '\n';
    }
    report["results"].push_back(r);
  }
  report["all_hold"] = all_hold;
  write_out(out, report.dump(2) + "\n");
  return all_hold ? 0 : 1;
}

int cmd_analyze(const SpecArgs& args, const std::string& state) {
  const PrimalBoard board = state.empty() ? initial_board(args.spec()) : decode(state);
  const Position p = position_of(board);
  std::cout << render_ascii(board);
  std::cout << "strings " << p.describe() << '\n';
  ojson j = analysis_json(board);
  if (!p.terminal()) {
    Solver solver;
    const SolveResult r = solver.solve(p);
    j["value"] = r.value;
    j["best"] = to_string(dual_to_primal(board, *r.best));
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_play(const SpecArgs& args, const std::string& engine, const std::string& mode) {
  GameService service;
  ojson req;
  req["spec"] = spec_to_json(args.spec());
  req["engine_role"] = engine;
  req["engine_mode"] = mode;
  ojson created = service.create(req);
  const std::string id = created["id"];
  auto show = [](const ojson& reply) {
    if (reply.contains("engine_replies") && !reply["engine_replies"].empty()) {
      std::cout << "engine:";
      for (const auto& e : reply["engine_replies"]) std::cout << ' ' << e.get<std::string>();
      std::cout << '\n';
    }
    const PrimalBoard b = board_from_json(reply["state"]);
    std::cout << render_ascii(b);
    if (position_of(b).terminal()) {
      std::cout << "game over, net score for A: " << b.net_score() << '\n';
      return true;
    }
    std::cout << "edges: ";
    for (const auto& e : reply["state"]["legal_moves"]) std::cout << e.get<std::string>() << ' ';
    std::cout << "\n> " << std::flush;
    return false;
  };
  if (show(created)) return 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == "quit" || line == "q") break;
    if (line.empty()) continue;
    if (line == "analysis") {
      std::cout << service.analysis(id).dump(2) << "\n> " << std::flush;
      continue;
    }
    ojson mv;
    mv["edge"] = line;
    try {
      if (show(service.submit_move(id, mv))) return 0;
    } catch (const ServiceError& e) {
      std::cout << "rejected: " << e.what() << "\n> " << std::flush;
    }
  }
  return 0;
}

int cmd_serve(int port, const std::string& host) {
  GameService service;
  httplib::Server server;
  install_routes(server, service);
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

int cmd_scenario(const std::string& name) {
  const auto names = name.empty() ? scenario_names() : std::vector<std::string>{name};
  bool ok = true;
  for (const auto& nm : names) {
    const ScenarioResult r = scenario_check(nm);
    std::cout << r.name << ' ' << (r.passed ? "pass" : "fail") << '\n';
    for (const auto& t : r.trace) std::cout << "  " << t << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact play and strategy certification for narrow dots games"};
  app.require_subcommand(1);

  SpecArgs spec_args;
  std::string state;
  std::string out;
  std::size_t budget = Solver::kDefaultBudget;

  auto* solve = app.add_subcommand("solve", "optimal net score for the player to move");
  add_spec_options(solve, spec_args);
  solve->add_option("--state", state, "encoded position instead of the initial board");
  solve->add_option("--budget", budget, "memo entry budget");

  auto* table = app.add_subcommand("table", "optimal first-player score for n = 1..N");
  add_spec_options(table, spec_args);
  table->add_option("--out", out, "also write the rows to this file");
  table->add_option("--budget", budget, "memo entry budget");

  int theorem = 1;
  std::string n_list;
  std::string verify_boundary = "both";
  std::string mode = "constructive";
  bool expand = false;
  auto* verify = app.add_subcommand("verify", "worst-case score of the strategy agent");
  verify->add_option("--theorem", theorem, "1 (closed triangles) or 2 (boxes)")->required()->check(CLI::IsMember({1, 2}));
  verify->add_option("--n", n_list, "comma-separated board lengths")->required();
  verify->add_option("--boundary", verify_boundary, "theorem 2 boundary: open | closed | both")
      ->check(CLI::IsMember({"open", "closed", "both"}));
  verify->add_option("--mode", mode, "constructive | solver")->check(CLI::IsMember({"constructive", "solver"}));
  verify->add_option("--out", out, "JSON report file");
  verify->add_flag("--expand-control", expand, "search the endgame instead of using the solver value");

  auto* analyze = app.add_subcommand("analyze", "chains, edge labels and double deals");
  add_spec_options(analyze, spec_args);
  analyze->add_option("--state", state, "encoded position instead of the initial board");

  std::string engine = "second";
  std::string play_mode = "solver";
  auto* play = app.add_subcommand("play", "play against the engine in the terminal");
  add_spec_options(play, spec_args);
  play->add_option("--engine", engine, "first | second | none")->check(CLI::IsMember({"first", "second", "none"}));
  play->add_option("--mode", play_mode, "constructive | solver")->check(CLI::IsMember({"constructive", "solver"}));

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "HTTP game service");
  serve->add_option("--port", port, "port");
  serve->add_option("--host", host, "bind address");

  std::string scenario_name;
  auto* scenario = app.add_subcommand("scenario", "replay the odd-n mirroring failure scenarios");
  scenario->add_option("--name", scenario_name, "fig9_unmirrorable | fig10_zugzwang (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(spec_args, state, budget);
    if (*table) return cmd_table(spec_args, out, budget);
    if (*verify) return cmd_verify(theorem, n_list, verify_boundary, mode, out, expand);
    if (*analyze) return cmd_analyze(spec_args, state);
    if (*play) return cmd_play(spec_args, engine, play_mode);
    if (*serve) return cmd_serve(port, host);
    if (*scenario) return cmd_scenario(scenario_name);
  } catch (const ServiceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
