#include "narrow/board_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace narrow {
namespace {

bool is_boxes(const GameSpec& spec) { return spec.game == Game::Boxes; }

char player_char(Player p) { return p == Player::A ? 'A' : 'B'; }

Player parse_player(const std::string& s) {
  if (s == "A") return Player::A;
  if (s == "B") return Player::B;
  throw BoardError("bad player '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_index(const std::string& s) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), ::isdigit))
    throw BoardError("bad index '" + s + "'");
  return std::stoi(s);
}

// Primal edges of the leg bundle at `coin`, in drawing priority.
std::vector<PrimalEdgeId> leg_edges(const GameSpec& spec, int coin) {
  std::vector<PrimalEdgeId> out;
  const int m = spec.coin_count();
  if (is_boxes(spec)) {
    out.push_back({PrimalKind::Top, coin});
    out.push_back({PrimalKind::Bottom, coin});
    if (coin == 0) out.push_back({PrimalKind::Vert, 0});
    if (coin == m - 1) out.push_back({PrimalKind::Vert, spec.n});
    return out;
  }
  if (coin % 2 == 1) {
    out.push_back({PrimalKind::Top, coin / 2});
  } else {
    out.push_back({PrimalKind::Bottom, coin / 2});
  }
  if (coin == 0) out.push_back({PrimalKind::SideLeft, 0});
  if (coin == m - 1) out.push_back({PrimalKind::SideRight, 0});
  return out;
}

// Primal edge of the inner string between coin `left` and `left + 1`.
PrimalEdgeId inner_edge(const GameSpec& spec, int left) {
  if (is_boxes(spec)) return {PrimalKind::Vert, left + 1};
  return {PrimalKind::Slant, left};
}

void check_owners(const PrimalBoard& board) {
  if (static_cast<int>(board.owner.size()) != board.spec.coin_count())
    throw BoardError("owner list does not match the face count");
}

}  // namespace

std::string to_string(PrimalEdgeId id) {
  switch (id.kind) {
    case PrimalKind::Top: return "T" + std::to_string(id.index);
    case PrimalKind::Bottom: return "B" + std::to_string(id.index);
    case PrimalKind::Vert: return "V" + std::to_string(id.index);
    case PrimalKind::Slant: return "S" + std::to_string(id.index);
    case PrimalKind::SideLeft: return "L";
    case PrimalKind::SideRight: return "R";
  }
  return "?";
}

std::vector<PrimalEdgeId> all_primal_edges(const GameSpec& spec) {
  spec.validate();
  std::vector<PrimalEdgeId> out;
  const int n = spec.n;
  if (is_boxes(spec)) {
    for (int i = 0; i < n; ++i) out.push_back({PrimalKind::Top, i});
    for (int i = 0; i < n; ++i) out.push_back({PrimalKind::Bottom, i});
    for (int i = 0; i <= n; ++i) out.push_back({PrimalKind::Vert, i});
  } else {
    for (int j = 0; j + 1 < n; ++j) out.push_back({PrimalKind::Top, j});
    for (int i = 0; i < n; ++i) out.push_back({PrimalKind::Bottom, i});
    for (int k = 0; k + 1 < spec.coin_count(); ++k) out.push_back({PrimalKind::Slant, k});
    out.push_back({PrimalKind::SideLeft, 0});
    out.push_back({PrimalKind::SideRight, 0});
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrimalEdgeId parse_primal_edge(const GameSpec& spec, const std::string& s) {
  if (s.empty()) throw BoardError("empty edge name");
  PrimalEdgeId id;
  if (s == "L" || s == "R") {
    id.kind = s == "L" ? PrimalKind::SideLeft : PrimalKind::SideRight;
  } else {
    switch (s[0]) {
      case 'T': id.kind = PrimalKind::Top; break;
      case 'B': id.kind = PrimalKind::Bottom; break;
      case 'V': id.kind = PrimalKind::Vert; break;
      case 'S': id.kind = PrimalKind::Slant; break;
      default: throw BoardError("bad edge name '" + s + "'");
    }
    id.index = parse_index(s.substr(1));
  }
  const auto all = all_primal_edges(spec);
  if (!std::binary_search(all.begin(), all.end(), id))
    throw BoardError("edge '" + s + "' is not on a " + to_string(spec) + " board");
  return id;
}

std::vector<PrimalEdgeId> predrawn_edges(const GameSpec& spec) {
  std::vector<PrimalEdgeId> out;
  if (spec.boundary == Boundary::Open) return out;
  for (PrimalEdgeId id : all_primal_edges(spec)) {
    const bool top = id.kind == PrimalKind::Top;
    const bool side = id.kind == PrimalKind::SideLeft || id.kind == PrimalKind::SideRight ||
                      (is_boxes(spec) && id.kind == PrimalKind::Vert &&
                       (id.index == 0 || id.index == spec.n));
    if (top || side) out.push_back(id);
  }
  return out;
}

bool PrimalBoard::is_drawn(PrimalEdgeId id) const {
  return std::binary_search(drawn.begin(), drawn.end(), id);
}

int PrimalBoard::net_score() const {
  int net = 0;
  for (const auto& o : owner)
    if (o) net += sign(*o);
  return net;
}

PrimalBoard initial_board(const GameSpec& spec) {
  spec.validate();
  PrimalBoard b;
  b.spec = spec;
  b.drawn = predrawn_edges(spec);
  b.owner.assign(spec.coin_count(), std::nullopt);
  return b;
}

EdgeRef primal_to_dual(const GameSpec& spec, PrimalEdgeId id) {
  const int m = spec.coin_count();
  switch (id.kind) {
    case PrimalKind::Top:
      return EdgeRef::leg(is_boxes(spec) ? id.index : 2 * id.index + 1);
    case PrimalKind::Bottom:
      return EdgeRef::leg(is_boxes(spec) ? id.index : 2 * id.index);
    case PrimalKind::Vert:
      if (id.index == 0) return EdgeRef::leg(0);
      if (id.index == spec.n) return EdgeRef::leg(m - 1);
      return EdgeRef::inner(id.index - 1);
    case PrimalKind::Slant:
      return EdgeRef::inner(id.index);
    case PrimalKind::SideLeft:
      return EdgeRef::leg(0);
    case PrimalKind::SideRight:
      return EdgeRef::leg(m - 1);
  }
  throw BoardError("bad edge");
}

EdgeRef primal_to_dual(const PrimalBoard& board, PrimalEdgeId id) {
  const auto all = all_primal_edges(board.spec);
  if (!std::binary_search(all.begin(), all.end(), id))
    throw BoardError("edge " + to_string(id) + " is not on this board");
  if (board.is_drawn(id)) throw BoardError("edge " + to_string(id) + " is already drawn");
  return primal_to_dual(board.spec, id);
}

PrimalEdgeId dual_to_primal(const PrimalBoard& board, EdgeRef e) {
  const int m = board.spec.coin_count();
  if (e.coin < 0 || e.coin >= m || (e.kind == EdgeKind::Inner && e.coin + 1 >= m))
    throw BoardError("string " + to_string(e) + " is off the board");
  if (e.kind == EdgeKind::Inner) {
    const PrimalEdgeId id = inner_edge(board.spec, e.coin);
    if (board.is_drawn(id)) throw BoardError("string " + to_string(e) + " is already cut");
    return id;
  }
  for (PrimalEdgeId id : leg_edges(board.spec, e.coin))
    if (!board.is_drawn(id)) return id;
  throw BoardError("string " + to_string(e) + " is already cut");
}

Position position_of(const PrimalBoard& board) {
  check_owners(board);
  const int m = board.spec.coin_count();
  std::vector<std::uint8_t> legs(m, 0);
  std::vector<std::uint8_t> inner(m > 0 ? m - 1 : 0, 0);
  for (int c = 0; c < m; ++c)
    for (PrimalEdgeId id : leg_edges(board.spec, c))
      if (!board.is_drawn(id)) ++legs[c];
  for (int c = 0; c + 1 < m; ++c) inner[c] = board.is_drawn(inner_edge(board.spec, c)) ? 0 : 1;
  for (int c = 0; c < m; ++c) {
    const int degree = legs[c] + (c > 0 ? inner[c - 1] : 0) + (c + 1 < m ? inner[c] : 0);
    if ((degree == 0) != board.owner[c].has_value())
      throw BoardError("face " + std::to_string(c) + (degree == 0 ? " is closed but unowned"
                                                                   : " is owned but open"));
  }
  return Position::from_frame(std::move(legs), std::move(inner), board.owner, board.to_move);
}

PrimalBoard sync(const PrimalBoard& board, const Position& p) {
  const Position cur = position_of(board);
  if (p.frame_size() != cur.frame_size()) throw BoardError("position does not fit the board");
  PrimalBoard out = board;
  for (int c = 0; c < p.frame_size(); ++c) {
    if (p.legs(c) > cur.legs(c)) throw BoardError("position has strings the board lacks");
    for (int k = p.legs(c); k < cur.legs(c); ++k) {
      const PrimalEdgeId id = dual_to_primal(out, EdgeRef::leg(c));
      out.drawn.insert(std::lower_bound(out.drawn.begin(), out.drawn.end(), id), id);
    }
    if (c + 1 < p.frame_size()) {
      if (p.has_inner(c) && !cur.has_inner(c))
        throw BoardError("position has strings the board lacks");
      if (!p.has_inner(c) && cur.has_inner(c)) {
        const PrimalEdgeId id = inner_edge(board.spec, c);
        out.drawn.insert(std::lower_bound(out.drawn.begin(), out.drawn.end(), id), id);
      }
    }
  }
  for (int c = 0; c < p.frame_size(); ++c) {
    if (board.owner[c] && board.owner[c] != p.owner(c))
      throw BoardError("position changes the owner of face " + std::to_string(c));
    out.owner[c] = p.owner(c);
  }
  out.to_move = p.to_move();
  position_of(out);
  return out;
}

PrimalMove play_edge(const PrimalBoard& board, PrimalEdgeId id) {
  const EdgeRef e = primal_to_dual(board, id);
  const Position before = position_of(board);
  PrimalMove mv{board, id, apply_move(before, e)};
  mv.board.drawn.insert(std::lower_bound(mv.board.drawn.begin(), mv.board.drawn.end(), id), id);
  const Position& after = mv.outcome.resulting;
  for (int c = 0; c < after.frame_size(); ++c) mv.board.owner[c] = after.owner(c);
  mv.board.to_move = after.to_move();
  return mv;
}

PrimalMove play_string(const PrimalBoard& board, EdgeRef e) {
  return play_edge(board, dual_to_primal(board, e));
}

std::vector<PrimalEdgeId> legal_edges(const PrimalBoard& board) {
  std::vector<PrimalEdgeId> out;
  for (PrimalEdgeId id : all_primal_edges(board.spec))
    if (!board.is_drawn(id)) out.push_back(id);
  return out;
}

std::string render_ascii(const PrimalBoard& board) {
  check_owners(board);
  const GameSpec& spec = board.spec;
  const int n = spec.n;
  auto face = [&](int c) { return board.owner[c] ? player_char(*board.owner[c]) : ' '; };
  auto drawn = [&](PrimalKind k, int i) { return board.is_drawn({k, i}); };
  std::ostringstream os;

  if (is_boxes(spec)) {
    std::string top = "+";
    std::string mid;
    std::string bot = "+";
    for (int i = 0; i < n; ++i) {
      top += drawn(PrimalKind::Top, i) ? "---+" : "   +";
      bot += drawn(PrimalKind::Bottom, i) ? "---+" : "   +";
    }
    for (int i = 0; i <= n; ++i) {
      mid += drawn(PrimalKind::Vert, i) ? '|' : ' ';
      if (i < n) mid += std::string(" ") + face(i) + " ";
    }
    os << top << '\n' << mid << '\n' << bot << '\n';
  } else {
    const int width = 4 * n + 1;
    std::string top(width, ' ');
    std::string mid(width, ' ');
    std::string bot(width, ' ');
    for (int j = 0; j < n; ++j) top[2 + 4 * j] = '+';
    for (int j = 0; j + 1 < n; ++j)
      if (drawn(PrimalKind::Top, j)) top.replace(3 + 4 * j, 3, "---");
    for (int i = 0; i <= n; ++i) bot[4 * i] = '+';
    for (int i = 0; i < n; ++i)
      if (drawn(PrimalKind::Bottom, i)) bot.replace(1 + 4 * i, 3, "---");
    for (int i = 0; i < n; ++i) {
      const bool left = i == 0 ? drawn(PrimalKind::SideLeft, 0) : drawn(PrimalKind::Slant, 2 * i - 1);
      const bool right = i == n - 1 ? drawn(PrimalKind::SideRight, 0) : drawn(PrimalKind::Slant, 2 * i);
      if (left) mid[1 + 4 * i] = '/';
      mid[2 + 4 * i] = face(2 * i);
      if (right) mid[3 + 4 * i] = '\\';
      if (i + 1 < n) mid[4 + 4 * i] = face(2 * i + 1);
    }
    os << top << '\n' << mid << '\n' << bot << '\n';
  }
  int a = 0;
  int b = 0;
  for (const auto& o : board.owner) {
    if (o == Player::A) ++a;
    if (o == Player::B) ++b;
  }
  os << "A " << a << "  B " << b << "  net " << (a - b) << "  to move " << player_char(board.to_move)
     << '\n';
  return os.str();
}

std::string encode(const PrimalBoard& board) {
  check_owners(board);
  std::string out = to_string(board.spec) + "/";
  if (board.drawn.empty()) out += "-";
  for (std::size_t i = 0; i < board.drawn.size(); ++i) {
    if (i) out += ',';
    out += to_string(board.drawn[i]);
  }
  out += "/";
  bool any = false;
  for (std::size_t c = 0; c < board.owner.size(); ++c) {
    if (!board.owner[c]) continue;
    if (any) out += ',';
    out += std::to_string(c);
    out += player_char(*board.owner[c]);
    any = true;
  }
  if (!any) out += "-";
  out += "/";
  out += player_char(board.to_move);
  return out;
}

PrimalBoard decode(const std::string& line) {
  const auto fields = split(line, '/');
  if (fields.size() != 4) throw BoardError("expected 4 '/'-separated fields in '" + line + "'");
  const auto head = split(fields[0], ':');
  if (head.size() != 3) throw BoardError("bad spec '" + fields[0] + "'");
  PrimalBoard b;
  try {
    b.spec = {parse_game(head[0]), parse_boundary(head[1]), parse_index(head[2])};
    b.spec.validate();
  } catch (const BoardError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw BoardError(e.what());
  }
  if (fields[1] != "-") {
    for (const auto& name : split(fields[1], ',')) b.drawn.push_back(parse_primal_edge(b.spec, name));
    if (!std::is_sorted(b.drawn.begin(), b.drawn.end()) ||
        std::adjacent_find(b.drawn.begin(), b.drawn.end()) != b.drawn.end())
      throw BoardError("drawn edges must be sorted and unique");
  }
  for (PrimalEdgeId id : predrawn_edges(b.spec))
    if (!b.is_drawn(id)) throw BoardError("closed board is missing " + to_string(id));
  b.owner.assign(b.spec.coin_count(), std::nullopt);
  if (fields[2] != "-") {
    int last = -1;
    for (const auto& item : split(fields[2], ',')) {
      if (item.size() < 2) throw BoardError("bad owner entry '" + item + "'");
      const int face = parse_index(item.substr(0, item.size() - 1));
      if (face <= last || face >= b.spec.coin_count())
        throw BoardError("owner entries must name increasing faces on the board");
      b.owner[face] = parse_player(item.substr(item.size() - 1));
      last = face;
    }
  }
  b.to_move = parse_player(fields[3]);
  position_of(b);
  if (encode(b) != line) throw BoardError("non-canonical encoding '" + line + "'");
  return b;
}

nlohmann::ordered_json spec_to_json(const GameSpec& spec) {
  nlohmann::ordered_json j;
  j["game"] = to_string(spec.game);
  j["boundary"] = to_string(spec.boundary);
  j["n"] = spec.n;
  return j;
}

GameSpec spec_from_json(const nlohmann::json& j) {
  try {
    GameSpec spec{parse_game(j.at("game").get<std::string>()),
                  parse_boundary(j.at("boundary").get<std::string>()), j.at("n").get<int>()};
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw BoardError(std::string("bad spec: ") + e.what());
  } catch (const BoardError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw BoardError(e.what());
  }
}

nlohmann::ordered_json to_json(const PrimalBoard& board) {
  nlohmann::ordered_json j;
  j["spec"] = spec_to_json(board.spec);
  j["drawn"] = nlohmann::ordered_json::array();
  for (PrimalEdgeId id : board.drawn) j["drawn"].push_back(to_string(id));
  j["owners"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < board.owner.size(); ++c) {
    if (!board.owner[c]) continue;
    nlohmann::ordered_json o;
    o["face"] = c;
    o["player"] = to_string(*board.owner[c]);
    j["owners"].push_back(o);
  }
  j["to_move"] = to_string(board.to_move);
  j["net_score"] = board.net_score();
  j["legal_moves"] = nlohmann::ordered_json::array();
  if (!position_of(board).terminal())
    for (PrimalEdgeId id : legal_edges(board)) j["legal_moves"].push_back(to_string(id));
  return j;
}

PrimalBoard board_from_json(const nlohmann::json& j) {
  PrimalBoard b;
  b.spec = spec_from_json(j.at("spec"));
  try {
    for (const auto& name : j.at("drawn")) b.drawn.push_back(parse_primal_edge(b.spec, name.get<std::string>()));
    std::sort(b.drawn.begin(), b.drawn.end());
    if (std::adjacent_find(b.drawn.begin(), b.drawn.end()) != b.drawn.end())
      throw BoardError("duplicate drawn edge");
    b.owner.assign(b.spec.coin_count(), std::nullopt);
    for (const auto& o : j.at("owners")) {
      const int face = o.at("face").get<int>();
      if (face < 0 || face >= b.spec.coin_count()) throw BoardError("owner face off the board");
      b.owner[face] = parse_player(o.at("player").get<std::string>());
    }
    b.to_move = parse_player(j.at("to_move").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw BoardError(std::string("bad state: ") + e.what());
  }
  for (PrimalEdgeId id : predrawn_edges(b.spec))
    if (!b.is_drawn(id)) throw BoardError("closed board is missing " + to_string(id));
  position_of(b);
  return b;
}

std::vector<PrimalBoard> read_fixtures(std::istream& in) {
  std::vector<PrimalBoard> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(decode(line.substr(first)));
    } catch (const BoardError& e) {
      throw BoardError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_fixtures(std::ostream& out, const std::vector<PrimalBoard>& boards,
                    const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& b : boards) out << encode(b) << '\n';
}

}  // namespace narrow
