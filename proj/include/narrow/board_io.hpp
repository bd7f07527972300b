#pragma once

// The dots board behind a strings-and-coins position: primal edge names, the
// primal <-> dual edge mapping, text and JSON encodings, ASCII rendering.
//
// Face i is coin i. Boxes edges: T<i> (top of box i), B<i> (bottom of box i),
// V<i> (vertical i, 0..n). Triangles: B<i> (base of upward triangle i),
// T<j> (top of downward triangle j), S<k> (k-th slanted edge shared by faces
// k and k+1), L / R (left / right sides).

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "narrow/game.hpp"

namespace narrow {

enum class PrimalKind : std::uint8_t { Top, Bottom, Vert, Slant, SideLeft, SideRight };

struct PrimalEdgeId {
  PrimalKind kind = PrimalKind::Top;
  int index = 0;

  friend auto operator<=>(const PrimalEdgeId&, const PrimalEdgeId&) = default;
  friend bool operator==(const PrimalEdgeId&, const PrimalEdgeId&) = default;
};

class BoardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(PrimalEdgeId id);
/// Throws BoardError for names that are malformed or off the spec's board.
PrimalEdgeId parse_primal_edge(const GameSpec& spec, const std::string& s);

/// Every edge of the board, sorted.
std::vector<PrimalEdgeId> all_primal_edges(const GameSpec& spec);

/// Edges drawn before the first move (closed variants only).
std::vector<PrimalEdgeId> predrawn_edges(const GameSpec& spec);

struct PrimalBoard {
  GameSpec spec;
  std::vector<PrimalEdgeId> drawn;            // sorted, unique
  std::vector<std::optional<Player>> owner;   // per face
  Player to_move = Player::A;

  bool is_drawn(PrimalEdgeId id) const;
  int net_score() const;  // faces of A minus faces of B

  friend bool operator==(const PrimalBoard&, const PrimalBoard&) = default;
};

PrimalBoard initial_board(const GameSpec& spec);

/// The string an edge corresponds to, ignoring what is drawn.
EdgeRef primal_to_dual(const GameSpec& spec, PrimalEdgeId id);
/// As above; throws BoardError when `id` is already drawn.
EdgeRef primal_to_dual(const PrimalBoard& board, PrimalEdgeId id);

/// An undrawn edge for string `e`. A leg bundle picks Top, then Bottom, then
/// a side. Throws BoardError when `e` has no undrawn edge.
PrimalEdgeId dual_to_primal(const PrimalBoard& board, EdgeRef e);

/// The position the board shows. Throws BoardError when a face is owned
/// without all its edges drawn or vice versa.
Position position_of(const PrimalBoard& board);

/// Draws the edges of the strings `p` has cut since `board` and copies owners
/// and the player to move. Throws BoardError when `p` is not reachable from
/// `board`.
PrimalBoard sync(const PrimalBoard& board, const Position& p);

struct PrimalMove {
  PrimalBoard board;
  PrimalEdgeId drawn;
  MoveOutcome outcome;
};

/// Draws `id` and plays the matching cut.
PrimalMove play_edge(const PrimalBoard& board, PrimalEdgeId id);
/// Plays string `e`, drawing the edge dual_to_primal picks.
PrimalMove play_string(const PrimalBoard& board, EdgeRef e);

/// Undrawn edges, sorted. Each is a legal move.
std::vector<PrimalEdgeId> legal_edges(const PrimalBoard& board);

std::string render_ascii(const PrimalBoard& board);

/// `<game>:<boundary>:<n>/<drawn>/<owners>/<to_move>`, e.g.
/// `boxes:closed:2/T0,T1,V0,V2/-/A`; owners read `0A,1B`; `-` is empty.
std::string encode(const PrimalBoard& board);
/// Inverse of encode; validates the board. Throws BoardError.
PrimalBoard decode(const std::string& line);

/// Wire form: {spec:{game,boundary,n}, drawn, owners:[{face,player}],
/// to_move, net_score, legal_moves}, keys in that order.
nlohmann::ordered_json to_json(const PrimalBoard& board);
PrimalBoard board_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const GameSpec& spec);
GameSpec spec_from_json(const nlohmann::json& j);

/// One encoded state per line; blank lines and `#` comments are skipped.
std::vector<PrimalBoard> read_fixtures(std::istream& in);
void write_fixtures(std::ostream& out, const std::vector<PrimalBoard>& boards,
                    const std::string& comment = {});

}  // namespace narrow
