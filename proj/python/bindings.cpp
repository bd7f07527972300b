#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "narrow/analysis.hpp"
#include "narrow/board_io.hpp"
#include "narrow/service.hpp"
#include "narrow/solver.hpp"
#include "narrow/strategy.hpp"
#include "narrow/verifier.hpp"

namespace py = pybind11;
using namespace narrow;

namespace {

GameSpec make_spec(const std::string& game, const std::string& boundary, int n) {
  GameSpec s{parse_game(game), parse_boundary(boundary), n};
  s.validate();
  return s;
}

std::vector<std::string> edge_names(const std::vector<EdgeRef>& edges) {
  std::vector<std::string> out;
  for (EdgeRef e : edges) out.push_back(to_string(e));
  return out;
}

py::dict chain_dict(const Chain& c) {
  py::dict d;
  d["edges"] = edge_names(c.edges);
  d["length"] = c.length;
  d["category"] = to_string(c.category);
  return d;
}

}  // namespace

PYBIND11_MODULE(_narrow, m) {
  m.doc() = "1xn Dots-and-Boxes / Dots-and-Triangles engine";

  py::register_exception<MemoOverflow>(m, "MemoOverflow", PyExc_MemoryError);
  py::register_exception<StrategyViolation>(m, "StrategyViolation", PyExc_RuntimeError);

  py::class_<Position>(m, "Position")
      .def(py::init([](const std::string& game, const std::string& boundary, int n) {
             return initial_position(make_spec(game, boundary, n));
           }),
           py::arg("game"), py::arg("boundary"), py::arg("n"))
      .def_static(
          "from_components",
          [](const std::vector<std::vector<int>>& comps, const std::string& to_move) {
            return Position::from_components(comps, to_move == "B" ? Player::B : Player::A);
          },
          py::arg("components"), py::arg("to_move") = "A")
      .def_property_readonly("to_move", [](const Position& p) { return to_string(p.to_move()); })
      .def_property_readonly("captured_net", &Position::captured_net)
      .def_property_readonly("coins_remaining", &Position::coins_remaining)
      .def_property_readonly("terminal", &Position::terminal)
      .def_property_readonly("frame_size", &Position::frame_size)
      .def("components", &canonical_components)
      .def("legal_moves", [](const Position& p) { return edge_names(legal_moves(p)); })
      .def(
          "play",
          [](const Position& p, const std::string& edge) {
            MoveOutcome out = apply_move(p, parse_edge_ref(edge));
            return py::make_tuple(out.resulting, out.captured, out.extra_turn);
          },
          py::arg("edge"), "Returns (position, captured coins, extra turn).")
      .def("mirror", [](const Position& p) { return mirror(p); })
      .def("mirror_edge", [](const Position& p, const std::string& e) { return to_string(mirror_edge(p, parse_edge_ref(e))); })
      .def("__eq__", [](const Position& a, const Position& b) { return a == b; })
      .def("__repr__", &Position::describe);

  py::class_<Solver>(m, "Solver")
      .def(py::init<std::size_t>(), py::arg("max_entries") = Solver::kDefaultBudget)
      .def("value", &Solver::value, py::call_guard<py::gil_scoped_release>())
      .def("best_move",
           [](Solver& s, const Position& p) -> std::optional<std::string> {
             const auto r = s.solve(p);
             if (!r.best) return std::nullopt;
             return to_string(*r.best);
           })
      .def("move_value", [](Solver& s, const Position& p, const std::string& e) { return s.move_value(p, parse_edge_ref(e)); })
      .def("principal_variation", [](Solver& s, const Position& p) { return edge_names(s.principal_variation(p)); })
      .def_property_readonly("memo_size", &Solver::memo_size);

  m.def(
      "score_table",
      [](const std::string& game, const std::string& boundary, int n_max) {
        std::vector<std::pair<int, std::optional<int>>> rows;
        py::gil_scoped_release release;
        for (const auto& r : score_table(parse_game(game), parse_boundary(boundary), n_max))
          rows.emplace_back(r.n, r.value);
        return rows;
      },
      py::arg("game"), py::arg("boundary"), py::arg("n_max"));

  m.def(
      "classify_edge",
      [](const Position& p, const std::string& edge, const std::string& method) {
        const EdgeRef e = parse_edge_ref(edge);
        if (method == "structural") return to_string(classify_edge_structural(p, e));
        if (method == "direct") return to_string(classify_edge_direct(p, e));
        throw std::invalid_argument("method must be structural or direct");
      },
      py::arg("position"), py::arg("edge"), py::arg("method") = "structural");

  m.def("chains", [](const Position& p) {
    py::list out;
    for (const auto& c : chains(p)) out.append(chain_dict(c));
    return out;
  });

  m.def("double_deals", [](const Position& p) {
    py::list out;
    for (const auto& o : find_double_deals(p)) out.append(py::make_tuple(to_string(o.x), to_string(o.y)));
    return out;
  });

  m.def(
      "first_move", [](const std::string& game, const std::string& boundary, int n) {
        return to_string(first_move(make_spec(game, boundary, n)));
      });
  m.def("strategy_supported", [](const std::string& game, const std::string& boundary, int n) {
    return strategy_supported(make_spec(game, boundary, n));
  });

  m.def(
      "guaranteed_score",
      [](const std::string& game, const std::string& boundary, int n, const std::string& mode) {
        const GameSpec spec = make_spec(game, boundary, n);
        const AgentMode am = parse_mode(mode);
        GuaranteeReport r;
        {
          py::gil_scoped_release release;
          r = guaranteed_score(spec, am);
        }
        py::dict d;
        d["spec"] = to_string(r.spec);
        d["mode"] = to_string(r.mode);
        d["worst_net"] = r.worst_net;
        d["witness_line"] = edge_names(r.witness_line);
        d["states_visited"] = r.states_visited;
        d["invariant_failures"] = r.invariant_failures;
        return d;
      },
      py::arg("game"), py::arg("boundary"), py::arg("n"), py::arg("mode") = "constructive");

  m.def("scenario_names", &scenario_names);
  m.def("scenario_check", [](const std::string& name) {
    const ScenarioResult r = scenario_check(name);
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["trace"] = r.trace;
    return d;
  });

  m.def("initial_board", [](const std::string& game, const std::string& boundary, int n) {
    return encode(initial_board(make_spec(game, boundary, n)));
  });
  m.def("render", [](const std::string& encoded) { return render_ascii(decode(encoded)); });
  m.def("board_json", [](const std::string& encoded) { return to_json(decode(encoded)).dump(); });
  m.def("board_position", [](const std::string& encoded) { return position_of(decode(encoded)); });
  m.def("board_play", [](const std::string& encoded, const std::string& edge) {
    const PrimalBoard b = decode(encoded);
    return encode(play_edge(b, parse_primal_edge(b.spec, edge)).board);
  });

  // JSON crosses the boundary as text; the Python wrapper parses it.
  py::class_<GameService>(m, "_GameService")
      .def(py::init<>())
      .def("create", [](GameService& s, const std::string& body) { return s.create(nlohmann::json::parse(body)).dump(); })
      .def("submit_move",
           [](GameService& s, const std::string& id, const std::string& body) {
             return s.submit_move(id, nlohmann::json::parse(body)).dump();
           })
      .def("fetch", [](GameService& s, const std::string& id) { return s.fetch(id).dump(); })
      .def("analysis", [](GameService& s, const std::string& id) { return s.analysis(id).dump(); })
      .def_property_readonly("session_count", &GameService::session_count);

  static py::exception<ServiceError> service_error(m, "ServiceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ServiceError& e) {
      py::tuple args = py::make_tuple(e.status(), e.code(), std::string(e.what()));
      PyErr_SetObject(service_error.ptr(), args.ptr());
    }
  });
}
