#include "narrow/game.hpp"

#include <algorithm>
#include <sstream>

namespace narrow {

struct PositionAccess {
  static std::vector<std::uint8_t>& legs(Position& p) { return p.legs_; }
  static std::vector<std::uint8_t>& inner(Position& p) { return p.inner_; }
  static std::vector<std::optional<Player>>& owner(Position& p) { return p.owner_; }
  static int& net(Position& p) { return p.captured_net_; }
  static Player& to_move(Position& p) { return p.to_move_; }
};

void GameSpec::validate() const {
  if (n < 1) throw std::invalid_argument("board length n must be at least 1");
}

std::string to_string(Game g) { return g == Game::Boxes ? "boxes" : "triangles"; }
std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "closed"; }
std::string to_string(Player p) { return p == Player::A ? "A" : "B"; }

std::string to_string(const GameSpec& spec) {
  return to_string(spec.game) + ":" + to_string(spec.boundary) + ":" + std::to_string(spec.n);
}

Game parse_game(const std::string& s) {
  if (s == "boxes") return Game::Boxes;
  if (s == "triangles") return Game::Triangles;
  throw std::invalid_argument("unknown game '" + s + "' (expected boxes|triangles)");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "closed") return Boundary::Closed;
  throw std::invalid_argument("unknown boundary '" + s + "' (expected open|closed)");
}

std::string to_string(EdgeRef e) {
  return (e.kind == EdgeKind::Leg ? "L" : "I") + std::to_string(e.coin);
}

EdgeRef parse_edge_ref(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'L' && s[0] != 'I'))
    throw std::invalid_argument("bad edge reference '" + s + "'");
  std::size_t used = 0;
  int coin = 0;
  try {
    coin = std::stoi(s.substr(1), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad edge reference '" + s + "'");
  }
  if (used != s.size() - 1 || coin < 0) throw std::invalid_argument("bad edge reference '" + s + "'");
  return {s[0] == 'L' ? EdgeKind::Leg : EdgeKind::Inner, coin};
}

// ---------------------------------------------------------------------------

int Position::degree(int coin) const {
  if (!alive(coin)) return 0;
  int d = legs_[coin];
  if (coin > 0 && inner_[coin - 1]) ++d;
  if (coin + 1 < frame_size() && inner_[coin]) ++d;
  return d;
}

int Position::coins_remaining() const {
  return static_cast<int>(std::count_if(owner_.begin(), owner_.end(),
                                        [](const auto& o) { return !o.has_value(); }));
}

int Position::captured_by(Player p) const {
  return static_cast<int>(std::count(owner_.begin(), owner_.end(), std::optional<Player>(p)));
}

int Position::string_count() const {
  int total = 0;
  for (auto l : legs_) total += l;
  for (auto i : inner_) total += i;
  return total;
}

std::vector<Component> Position::components() const {
  std::vector<Component> out;
  const int m = frame_size();
  for (int c = 0; c < m; ++c) {
    if (!alive(c)) continue;
    if (c > 0 && inner_[c - 1]) {
      out.back().legs.push_back(legs_[c]);
    } else {
      out.push_back(Component{c, {legs_[c]}});
    }
  }
  return out;
}

int Position::component_of(int coin) const {
  if (coin < 0 || coin >= frame_size() || !alive(coin)) return -1;
  int id = -1;
  for (int c = 0; c <= coin; ++c) {
    if (!alive(c)) continue;
    if (!(c > 0 && inner_[c - 1])) ++id;
  }
  return id;
}

bool Position::has_edge(EdgeRef e) const {
  if (e.coin < 0) return false;
  if (e.kind == EdgeKind::Leg) return e.coin < frame_size() && alive(e.coin) && legs_[e.coin] > 0;
  return e.coin + 1 < frame_size() && inner_[e.coin] != 0;
}

std::vector<int> Position::endpoints(EdgeRef e) const {
  if (e.kind == EdgeKind::Leg) return {e.coin};
  return {e.coin, e.coin + 1};
}

std::string Position::describe() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& comp : components()) {
    if (!first) os << " ";
    first = false;
    os << "@" << comp.first << "[";
    for (int i = 0; i < comp.size(); ++i) os << (i ? "," : "") << comp.legs[i];
    os << "]";
  }
  os << "} net=" << captured_net_ << " to_move=" << to_string(to_move_);
  return os.str();
}

void Position::validate() const {
  const int m = frame_size();
  if (m == 0) throw std::invalid_argument("position has no coins");
  if (static_cast<int>(inner_.size()) != m - 1 || static_cast<int>(owner_.size()) != m)
    throw std::invalid_argument("inconsistent frame sizes");
  for (int c = 0; c < m; ++c) {
    if (legs_[c] > kMaxLegs) throw std::invalid_argument("leg multiplicity above 4");
    if (!alive(c)) {
      if (legs_[c] != 0 || (c > 0 && inner_[c - 1]) || (c + 1 < m && inner_[c]))
        throw std::invalid_argument("captured coin still has strings");
    } else if (degree(c) == 0) {
      throw std::invalid_argument("live coin of degree zero at " + std::to_string(c));
    }
  }
}

Position Position::from_components(const std::vector<std::vector<int>>& comps, Player to_move,
                                   int captured_net) {
  Position p;
  for (const auto& comp : comps) {
    if (comp.empty()) throw std::invalid_argument("empty component");
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (comp[i] < 0) throw std::invalid_argument("negative leg multiplicity");
      if (!p.legs_.empty()) p.inner_.push_back(i > 0 ? 1 : 0);
      p.legs_.push_back(static_cast<std::uint8_t>(std::min(comp[i], 255)));
      p.owner_.push_back(std::nullopt);
    }
  }
  p.to_move_ = to_move;
  p.captured_net_ = captured_net;
  p.validate();
  return p;
}

Position Position::from_frame(std::vector<std::uint8_t> legs, std::vector<std::uint8_t> inner,
                              std::vector<std::optional<Player>> owner, Player to_move) {
  Position p;
  p.legs_ = std::move(legs);
  p.inner_ = std::move(inner);
  p.owner_ = owner.empty() ? std::vector<std::optional<Player>>(p.legs_.size()) : std::move(owner);
  p.to_move_ = to_move;
  p.validate();
  for (const auto& o : p.owner_)
    if (o) p.captured_net_ += sign(*o);
  return p;
}

Position initial_position(const GameSpec& spec) {
  spec.validate();
  const int m = spec.coin_count();
  std::vector<int> legs(m, 0);
  if (spec.game == Game::Boxes) {
    if (spec.boundary == Boundary::Closed) {
      std::fill(legs.begin(), legs.end(), 1);
    } else if (m == 1) {
      legs[0] = 4;
    } else {
      std::fill(legs.begin(), legs.end(), 2);
      legs.front() = legs.back() = 3;
    }
  } else {
    if (spec.boundary == Boundary::Closed) {
      for (int c = 0; c < m; c += 2) legs[c] = 1;
    } else if (m == 1) {
      legs[0] = 3;
    } else {
      std::fill(legs.begin(), legs.end(), 1);
      legs.front() = legs.back() = 2;
    }
  }
  return Position::from_components({legs});
}

std::vector<EdgeRef> legal_moves(const Position& p) {
  std::vector<EdgeRef> out;
  for (const auto& comp : p.components()) {
    for (int c = comp.first; c <= comp.last(); ++c)
      if (p.legs(c) > 0) out.push_back(EdgeRef::leg(c));
    for (int c = comp.first; c < comp.last(); ++c) out.push_back(EdgeRef::inner(c));
  }
  return out;
}

MoveOutcome apply_move(const Position& p, EdgeRef e) {
  if (!p.has_edge(e)) throw IllegalMove("no string " + to_string(e) + " in " + p.describe());
  MoveOutcome out{{}, false, p};
  Position& r = out.resulting;
  if (e.kind == EdgeKind::Leg) {
    --PositionAccess::legs(r)[e.coin];
  } else {
    PositionAccess::inner(r)[e.coin] = 0;
  }
  const Player mover = p.to_move();
  for (int c : p.endpoints(e)) {
    if (r.degree(c) == 0) {
      PositionAccess::owner(r)[c] = mover;
      PositionAccess::net(r) += sign(mover);
      out.captured.push_back(c);
    }
  }
  out.extra_turn = !out.captured.empty() && !r.terminal();
  if (!out.extra_turn) PositionAccess::to_move(r) = other(mover);
  return out;
}

EdgeRef mirror_edge(int frame_size, EdgeRef e) {
  if (e.kind == EdgeKind::Leg) return EdgeRef::leg(frame_size - 1 - e.coin);
  return EdgeRef::inner(frame_size - 2 - e.coin);
}

EdgeRef mirror_edge(const Position& p, EdgeRef e) { return mirror_edge(p.frame_size(), e); }

Position mirror(const Position& p) {
  Position r = p;
  std::reverse(PositionAccess::legs(r).begin(), PositionAccess::legs(r).end());
  std::reverse(PositionAccess::inner(r).begin(), PositionAccess::inner(r).end());
  std::reverse(PositionAccess::owner(r).begin(), PositionAccess::owner(r).end());
  return r;
}

// ---------------------------------------------------------------------------

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : k.words) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::vector<int>> canonical_components(const Position& p) {
  std::vector<std::vector<int>> parts;
  for (auto& comp : p.components()) {
    std::vector<int> rev(comp.legs.rbegin(), comp.legs.rend());
    parts.push_back(std::min(comp.legs, rev));
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return parts;
}

CanonicalKey canonical_key(const Position& p) {
  CanonicalKey key;
  int symbol = 0;
  auto push = [&](std::uint64_t v) {
    if (symbol >= 63) throw std::length_error("position too large for canonical key");
    key.words[symbol / 21] |= v << (3 * (symbol % 21));
    ++symbol;
  };
  for (const auto& part : canonical_components(p)) {
    for (int l : part) push(static_cast<std::uint64_t>(l) + 1);
    push(0);
  }
  return key;
}

}  // namespace narrow
