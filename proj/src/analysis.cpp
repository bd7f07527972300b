#include "narrow/analysis.hpp"

#include <algorithm>

namespace narrow {

std::string to_string(ChainCategory c) {
  switch (c) {
    case ChainCategory::Short: return "short";
    case ChainCategory::Medium: return "medium";
    case ChainCategory::Long: return "long";
  }
  return "?";
}

std::string to_string(EdgeClass c) { return c == EdgeClass::Good ? "good" : "bad"; }

bool Decomposition::is_base(EdgeRef e) const {
  return std::find(base_edges.begin(), base_edges.end(), e) != base_edges.end();
}

bool Decomposition::is_pendant_coin(int coin) const {
  return std::find(pendant_coins.begin(), pendant_coins.end(), coin) != pendant_coins.end();
}

bool Chain::contains(EdgeRef e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

std::optional<EdgeRef> Chain::middle() const {
  if (category != ChainCategory::Medium) return std::nullopt;
  return edges[1];
}

namespace {

std::vector<int> leg_coins(const Position& p, const Component& comp) {
  std::vector<int> out;
  for (int c = comp.first; c <= comp.last(); ++c)
    if (p.legs(c) > 0) out.push_back(c);
  return out;
}

ChainCategory category_of(int length) {
  if (length <= 1) return ChainCategory::Short;
  if (length == 2) return ChainCategory::Medium;
  return ChainCategory::Long;
}

Chain make_chain(std::vector<EdgeRef> edges) {
  Chain ch;
  ch.length = static_cast<int>(edges.size()) - 1;
  ch.category = category_of(ch.length);
  ch.edges = std::move(edges);
  return ch;
}

void append_inner(std::vector<EdgeRef>& edges, int from, int to) {
  for (int c = from; c < to; ++c) edges.push_back(EdgeRef::inner(c));
}

// The string of an available coin, and the neighbour it leads to (or -1 for
// the ground).
std::pair<EdgeRef, int> sole_string(const Position& p, int coin) {
  if (p.legs(coin) > 0) return {EdgeRef::leg(coin), -1};
  if (coin > 0 && p.has_inner(coin - 1)) return {EdgeRef::inner(coin - 1), coin - 1};
  return {EdgeRef::inner(coin), coin + 1};
}

}  // namespace

Decomposition decompose(const Position& p) {
  Decomposition d;
  for (const auto& comp : p.components()) {
    const auto legs = leg_coins(p, comp);
    if (legs.size() < 2) {
      for (int c = comp.first; c <= comp.last(); ++c) {
        d.pendant_coins.push_back(c);
        if (p.legs(c) > 0) d.pendant_edges.push_back(EdgeRef::leg(c));
        if (c < comp.last()) d.pendant_edges.push_back(EdgeRef::inner(c));
      }
      continue;
    }
    const int lo = legs.front();
    const int hi = legs.back();
    for (int c = comp.first; c <= comp.last(); ++c) {
      const bool base = c >= lo && c <= hi;
      (base ? d.base_coins : d.pendant_coins).push_back(c);
      if (p.legs(c) > 0) {
        d.base_edges.push_back(EdgeRef::leg(c));
        (c == lo || c == hi ? d.exterior_legs : d.interior_legs).push_back(EdgeRef::leg(c));
      }
      if (c < comp.last()) {
        const bool inner_base = c >= lo && c + 1 <= hi;
        (inner_base ? d.base_edges : d.pendant_edges).push_back(EdgeRef::inner(c));
      }
    }
  }
  return d;
}

std::vector<Chain> chains(const Position& p) {
  std::vector<Chain> out;
  for (const auto& comp : p.components()) {
    const auto legs = leg_coins(p, comp);
    if (legs.size() < 2) continue;
    if (legs.size() == 2) {
      std::vector<EdgeRef> edges{EdgeRef::leg(legs[0])};
      append_inner(edges, legs[0], legs[1]);
      edges.push_back(EdgeRef::leg(legs[1]));
      out.push_back(make_chain(std::move(edges)));
      continue;
    }
    std::vector<EdgeRef> head{EdgeRef::leg(legs[0])};
    append_inner(head, legs[0], legs[1]);
    out.push_back(make_chain(std::move(head)));
    for (std::size_t j = 1; j + 1 < legs.size(); ++j) {
      out.push_back(make_chain({EdgeRef::leg(legs[j])}));
      if (j + 2 < legs.size()) {
        std::vector<EdgeRef> between;
        append_inner(between, legs[j], legs[j + 1]);
        out.push_back(make_chain(std::move(between)));
      }
    }
    std::vector<EdgeRef> tail;
    append_inner(tail, legs[legs.size() - 2], legs.back());
    tail.push_back(EdgeRef::leg(legs.back()));
    out.push_back(make_chain(std::move(tail)));
  }
  return out;
}

std::optional<Chain> chain_of(const Position& p, EdgeRef e) {
  for (auto& ch : chains(p))
    if (ch.contains(e)) return ch;
  return std::nullopt;
}

bool incident_to_pendant(const Position& p, const Decomposition& d, EdgeRef e) {
  for (int c : p.endpoints(e)) {
    for (EdgeRef touching : {EdgeRef::leg(c), EdgeRef::inner(c - 1), EdgeRef::inner(c)}) {
      if (touching == e || !p.has_edge(touching)) continue;
      if (std::find(d.pendant_edges.begin(), d.pendant_edges.end(), touching) != d.pendant_edges.end())
        return true;
    }
  }
  return false;
}

EdgeClass classify_edge_structural(const Position& p, EdgeRef e) {
  const Decomposition d = decompose(p);
  if (!d.is_base(e)) throw std::invalid_argument(to_string(e) + " is not a base-graph edge");
  if (e.kind == EdgeKind::Leg && p.legs(e.coin) >= 2) return EdgeClass::Good;
  if (incident_to_pendant(p, d, e)) return EdgeClass::Bad;
  const auto ch = chain_of(p, e);
  if (ch->category == ChainCategory::Short) return EdgeClass::Good;
  if (ch->category == ChainCategory::Medium && ch->middle() == e) return EdgeClass::Good;
  return EdgeClass::Bad;
}

std::vector<DoubleDealOpportunity> double_deals_while_capturing(Position p) {
  std::vector<DoubleDealOpportunity> seen;
  for (;;) {
    for (const auto& opp : find_double_deals(p))
      if (std::find(seen.begin(), seen.end(), opp) == seen.end()) seen.push_back(opp);
    const auto avail = available_coins(p);
    if (avail.empty()) return seen;
    p = apply_move(p, sole_string(p, avail.front()).first).resulting;
  }
}

EdgeClass classify_edge_direct(const Position& p, EdgeRef e) {
  const auto after = double_deals_while_capturing(apply_move(p, e).resulting);
  if (after.empty()) return EdgeClass::Good;
  const auto before = double_deals_while_capturing(p);
  for (const auto& opp : after)
    if (std::find(before.begin(), before.end(), opp) == before.end()) return EdgeClass::Bad;
  return EdgeClass::Good;
}

std::vector<DoubleDealOpportunity> find_double_deals(const Position& p) {
  std::vector<DoubleDealOpportunity> out;
  for (int c = 0; c < p.frame_size(); ++c) {
    if (p.degree(c) != 1) continue;
    const auto [x, d] = sole_string(p, c);
    if (d < 0 || p.degree(d) != 2) continue;
    EdgeRef y;
    if (p.legs(d) == 1) {
      y = EdgeRef::leg(d);
    } else {
      y = d < c ? EdgeRef::inner(d - 1) : EdgeRef::inner(d);
    }
    out.push_back({x, y, c, d});
  }
  return out;
}

std::vector<int> available_coins(const Position& p) {
  std::vector<int> out;
  for (int c = 0; c < p.frame_size(); ++c)
    if (p.degree(c) == 1) out.push_back(c);
  return out;
}

int longest_capturable_run(const Position& p) {
  int best = 0;
  for (int start : available_coins(p)) {
    int run = 1;
    int next = sole_string(p, start).second;
    int prev = start;
    while (next >= 0) {
      const int deg = p.degree(next);
      if (deg == 1) {
        ++run;  // an isolated pair falls together
        break;
      }
      if (deg != 2) break;
      ++run;
      if (p.legs(next) == 1) break;
      const int after = next - 1 == prev ? next + 1 : next - 1;
      prev = next;
      next = after;
    }
    best = std::max(best, run);
  }
  return best;
}

}  // namespace narrow
