#pragma once

// Strings-and-Coins model of the narrow (1 x n) dots games.
//
// A position is a strip of coins in a fixed global frame: coin i of the
// original board keeps index i for the whole game. Each live coin carries a
// number of legs (strings to the ground); neighbouring coins may be joined by
// one inner string. A component is a maximal run of live coins joined by
// inner strings.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace narrow {

enum class Game : std::uint8_t { Boxes, Triangles };
enum class Boundary : std::uint8_t { Open, Closed };
enum class Player : std::uint8_t { A, B };

constexpr Player other(Player p) { return p == Player::A ? Player::B : Player::A; }
constexpr int sign(Player p) { return p == Player::A ? 1 : -1; }

struct GameSpec {
  Game game = Game::Boxes;
  Boundary boundary = Boundary::Closed;
  int n = 1;

  /// Throws std::invalid_argument when n < 1.
  void validate() const;
  int coin_count() const { return game == Game::Boxes ? n : 2 * n - 1; }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

std::string to_string(Game g);
std::string to_string(Boundary b);
std::string to_string(Player p);
std::string to_string(const GameSpec& spec);
Game parse_game(const std::string& s);
Boundary parse_boundary(const std::string& s);

class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EdgeKind : std::uint8_t { Leg, Inner };

/// A string in the global frame. For Inner, `coin` is the left endpoint.
struct EdgeRef {
  EdgeKind kind = EdgeKind::Leg;
  int coin = 0;

  static constexpr EdgeRef leg(int c) { return {EdgeKind::Leg, c}; }
  static constexpr EdgeRef inner(int left) { return {EdgeKind::Inner, left}; }

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

std::string to_string(EdgeRef e);
/// Parses "L3" / "I3".
EdgeRef parse_edge_ref(const std::string& s);

/// Leg multiplicities of one component, in strip order.
struct Component {
  int first = 0;  // global index of the leftmost coin
  std::vector<int> legs;

  int size() const { return static_cast<int>(legs.size()); }
  int last() const { return first + size() - 1; }
};

class Position {
 public:
  static constexpr int kMaxLegs = 4;

  Position() = default;

  /// Lays out the given leg sequences left to right with no strings between
  /// neighbouring components. Throws std::invalid_argument for empty or
  /// zero-degree coins and leg counts above kMaxLegs.
  static Position from_components(const std::vector<std::vector<int>>& comps,
                                  Player to_move = Player::A, int captured_net = 0);

  /// Raw frame constructor; validated like from_components. `owner` may be
  /// empty (no captured coins), otherwise one entry per coin.
  static Position from_frame(std::vector<std::uint8_t> legs, std::vector<std::uint8_t> inner,
                             std::vector<std::optional<Player>> owner, Player to_move);

  int frame_size() const { return static_cast<int>(legs_.size()); }
  bool alive(int coin) const { return !owner_[coin].has_value(); }
  int legs(int coin) const { return legs_[coin]; }
  bool has_inner(int left) const { return inner_[left] != 0; }
  int degree(int coin) const;
  std::optional<Player> owner(int coin) const { return owner_[coin]; }

  Player to_move() const { return to_move_; }
  /// Coins captured by A minus coins captured by B.
  int captured_net() const { return captured_net_; }
  int coins_remaining() const;
  int captured_by(Player p) const;
  int string_count() const;
  bool terminal() const { return coins_remaining() == 0; }

  std::vector<Component> components() const;
  /// Component index (left to right) holding `coin`, or -1 for captured coins.
  int component_of(int coin) const;
  bool has_edge(EdgeRef e) const;
  /// Coin endpoints of a string (one for legs, two for inner strings).
  std::vector<int> endpoints(EdgeRef e) const;

  std::string describe() const;

  friend bool operator==(const Position&, const Position&) = default;

 private:
  friend struct PositionAccess;

  void validate() const;

  std::vector<std::uint8_t> legs_;
  std::vector<std::uint8_t> inner_;  // inner_[i]: string between coin i and i+1
  std::vector<std::optional<Player>> owner_;
  int captured_net_ = 0;
  Player to_move_ = Player::A;
};

struct MoveOutcome {
  std::vector<int> captured;  // global coin ids, left to right
  bool extra_turn = false;
  Position resulting;
};

Position initial_position(const GameSpec& spec);

/// One entry per distinct cut effect, ordered by component, then kind (legs
/// first), then coin index. Empty for terminal positions.
std::vector<EdgeRef> legal_moves(const Position& p);

/// Throws IllegalMove when `e` is not a live string of `p`.
MoveOutcome apply_move(const Position& p, EdgeRef e);

Position mirror(const Position& p);
EdgeRef mirror_edge(const Position& p, EdgeRef e);
EdgeRef mirror_edge(int frame_size, EdgeRef e);

/// Identifies positions up to component permutation and reversal. Capture
/// history and the player to move are not part of the key.
struct CanonicalKey {
  std::array<std::uint64_t, 3> words{};
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

/// Up to 63 symbols (coins plus component separators) are representable;
/// larger positions throw std::length_error.
CanonicalKey canonical_key(const Position& p);

/// The component multiset in canonical orientation and order.
std::vector<std::vector<int>> canonical_components(const Position& p);

}  // namespace narrow
