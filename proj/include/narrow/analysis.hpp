#pragma once

// Structural analysis of narrow positions: base graph and pendants, the
// chain partition of the base graph, good/bad edge labels and
// double-dealing opportunities.
//
// A multi-leg bundle on one coin counts as a single leg when deciding which
// legs are exterior or interior.

#include <optional>
#include <vector>

#include "narrow/game.hpp"

namespace narrow {

struct Decomposition {
  std::vector<EdgeRef> base_edges;
  std::vector<EdgeRef> pendant_edges;
  std::vector<int> base_coins;
  std::vector<int> pendant_coins;
  std::vector<EdgeRef> exterior_legs;
  std::vector<EdgeRef> interior_legs;

  bool is_base(EdgeRef e) const;
  bool is_pendant_coin(int coin) const;
};

enum class ChainCategory { Short, Medium, Long };

struct Chain {
  std::vector<EdgeRef> edges;  // in path order
  int length = 0;              // edges.size() - 1
  ChainCategory category = ChainCategory::Short;

  bool contains(EdgeRef e) const;
  /// Middle edge of a medium chain.
  std::optional<EdgeRef> middle() const;
};

enum class EdgeClass { Good, Bad };

struct DoubleDealOpportunity {
  EdgeRef x;         // the only string of the capturable coin
  EdgeRef y;         // the partner's other string
  int capturable;    // degree-1 coin
  int partner;       // its degree-2 neighbour

  friend bool operator==(const DoubleDealOpportunity&, const DoubleDealOpportunity&) = default;
};

std::string to_string(ChainCategory c);
std::string to_string(EdgeClass c);

Decomposition decompose(const Position& p);

/// Chains of every component, left to right.
std::vector<Chain> chains(const Position& p);

/// The chain holding base edge `e`, if any.
std::optional<Chain> chain_of(const Position& p, EdgeRef e);

/// True when `e` shares a coin with a pendant edge.
bool incident_to_pendant(const Position& p, const Decomposition& d, EdgeRef e);

/// Good iff not incident to a pendant edge and either in a short chain or
/// the middle edge of a medium chain. A cut that only lowers a leg bundle of
/// weight two or more leaves the structure intact and is Good. Throws
/// std::invalid_argument for edges outside the base graph.
EdgeClass classify_edge_structural(const Position& p, EdgeRef e);

/// Bad iff, once the cut is made and the available coins are taken one by
/// one (leftmost first), a double-dealing opportunity shows up that the same
/// capture sequence from `p` itself never offers. Throws IllegalMove for
/// strings not in `p`.
EdgeClass classify_edge_direct(const Position& p, EdgeRef e);

/// Every double-dealing opportunity met while taking available coins
/// leftmost first until none remain.
std::vector<DoubleDealOpportunity> double_deals_while_capturing(Position p);

/// Every (capturable coin, degree-2 neighbour) pair, ordered by coin.
std::vector<DoubleDealOpportunity> find_double_deals(const Position& p);

/// Coins of degree one, left to right.
std::vector<int> available_coins(const Position& p);

/// Length of the longest run of coins that the mover could capture one after
/// another in a single turn, starting from an available coin.
int longest_capturable_run(const Position& p);

}  // namespace narrow
