#include "narrow/analysis.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"

namespace narrow {
namespace {

std::vector<EdgeRef> sorted(std::vector<EdgeRef> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<EdgeRef> live_strings(const Position& p) {
  std::vector<EdgeRef> out;
  for (int c = 0; c < p.frame_size(); ++c) {
    if (p.legs(c) > 0) out.push_back(EdgeRef::leg(c));
    if (c + 1 < p.frame_size() && p.has_inner(c)) out.push_back(EdgeRef::inner(c));
  }
  return out;
}

std::vector<int> chain_lengths(const Position& p) {
  std::vector<int> out;
  for (const auto& ch : chains(p)) out.push_back(ch.length);
  return out;
}

bool touches_bundle(const Position& p, EdgeRef e) {
  const int k = p.component_of(p.endpoints(e).front());
  for (int c = 0; c < p.frame_size(); ++c)
    if (p.component_of(c) == k && p.legs(c) >= 2) return true;
  return false;
}

TEST(Decompose, TrianglesStartIsAllBase) {
  const Position p = Position::from_components({{1, 0, 1, 0, 1}});
  const auto d = decompose(p);
  EXPECT_EQ(sorted(d.base_edges), sorted(live_strings(p)));
  EXPECT_TRUE(d.pendant_edges.empty());
  EXPECT_TRUE(d.pendant_coins.empty());
  EXPECT_EQ(d.exterior_legs, (std::vector<EdgeRef>{EdgeRef::leg(0), EdgeRef::leg(4)}));
  EXPECT_EQ(d.interior_legs, std::vector<EdgeRef>{EdgeRef::leg(2)});
}

TEST(Decompose, TrailingPendant) {
  const auto d = decompose(Position::from_components({{1, 1, 0}}));
  EXPECT_EQ(sorted(d.base_edges),
            sorted({EdgeRef::leg(0), EdgeRef::leg(1), EdgeRef::inner(0)}));
  EXPECT_EQ(d.pendant_edges, std::vector<EdgeRef>{EdgeRef::inner(1)});
  EXPECT_EQ(d.pendant_coins, std::vector<int>{2});
}

TEST(Decompose, OneLegIsNotBase) {
  const auto d = decompose(Position::from_components({{1}}));
  EXPECT_TRUE(d.base_edges.empty());
  EXPECT_EQ(d.pendant_edges, std::vector<EdgeRef>{EdgeRef::leg(0)});
}

TEST(Chains, Examples) {
  EXPECT_EQ(chain_lengths(Position::from_components({{1, 0, 1, 0, 1}})), (std::vector<int>{2, 0, 2}));
  EXPECT_EQ(chain_lengths(Position::from_components({{1, 0, 1}})), std::vector<int>{3});
  EXPECT_EQ(chain_lengths(Position::from_components({{1, 0, 0, 0, 1}})), std::vector<int>{5});
  const auto ch = chains(Position::from_components({{1, 0, 1}}));
  EXPECT_EQ(ch[0].category, ChainCategory::Long);
  EXPECT_EQ(ch[0].edges.front(), EdgeRef::leg(0));
  EXPECT_EQ(ch[0].edges.back(), EdgeRef::leg(2));
}

TEST(Chains, MediumMiddle) {
  const Position p = Position::from_components({{1, 0, 1, 0, 1}});
  const auto ch = chain_of(p, EdgeRef::inner(0));
  ASSERT_TRUE(ch.has_value());
  EXPECT_EQ(ch->category, ChainCategory::Medium);
  EXPECT_EQ(ch->middle(), EdgeRef::inner(0));
  EXPECT_FALSE(chain_of(p, EdgeRef::leg(2))->middle().has_value());
}

TEST(Classify, Structural) {
  const Position t = Position::from_components({{1, 0, 1, 0, 1}});
  EXPECT_EQ(classify_edge_structural(t, EdgeRef::inner(0)), EdgeClass::Good);
  EXPECT_EQ(classify_edge_structural(t, EdgeRef::leg(0)), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_structural(t, EdgeRef::inner(1)), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_structural(t, EdgeRef::leg(2)), EdgeClass::Good);

  // Short chains next to a trailing pendant.
  const Position b = Position::from_components({{1, 1, 1, 0}});
  EXPECT_EQ(classify_edge_structural(b, EdgeRef::inner(1)), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_structural(b, EdgeRef::leg(2)), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_structural(b, EdgeRef::leg(0)), EdgeClass::Good);
  EXPECT_THROW(classify_edge_structural(b, EdgeRef::inner(2)), std::invalid_argument);
}

TEST(Classify, Direct) {
  const Position t = Position::from_components({{1, 0, 1, 0, 1}});
  EXPECT_EQ(classify_edge_direct(t, EdgeRef::leg(2)), EdgeClass::Good);
  const Position longc = Position::from_components({{1, 0, 1}});
  for (EdgeRef e : legal_moves(longc)) EXPECT_EQ(classify_edge_direct(longc, e), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_direct(Position::from_components({{1, 1}}), EdgeRef::inner(0)), EdgeClass::Good);
  const Position b = Position::from_components({{1, 1, 1, 0}});
  EXPECT_EQ(classify_edge_direct(b, EdgeRef::inner(1)), EdgeClass::Bad);
  EXPECT_EQ(classify_edge_direct(b, EdgeRef::leg(2)), EdgeClass::Bad);
  EXPECT_THROW(classify_edge_direct(b, EdgeRef::leg(3)), IllegalMove);
}

TEST(DoubleDeals, Examples) {
  const auto dd = find_double_deals(Position::from_components({{1, 0}}));
  ASSERT_EQ(dd.size(), 1u);
  EXPECT_EQ(dd[0].x, EdgeRef::inner(0));
  EXPECT_EQ(dd[0].y, EdgeRef::leg(0));
  EXPECT_EQ(dd[0].capturable, 1);
  EXPECT_EQ(dd[0].partner, 0);
  EXPECT_TRUE(find_double_deals(Position::from_components({{0, 0}})).empty());
  EXPECT_TRUE(find_double_deals(initial_position({Game::Boxes, Boundary::Closed, 3})).empty());
}

TEST(DoubleDeals, AvailableAndRuns) {
  const Position p = Position::from_components({{0, 0, 1}, {1, 1}});
  EXPECT_EQ(available_coins(p), std::vector<int>{0});
  EXPECT_EQ(longest_capturable_run(p), 3);
  EXPECT_EQ(longest_capturable_run(Position::from_components({{1, 1}})), 0);
}

// Direct structural checks shared by the exhaustive and sampled sweeps.
struct AgreementTally {
  long edges = 0;
  long mismatches = 0;
  long bundle_mismatches = 0;
  std::set<std::string> examples;
};

void check_agreement(const Position& p, AgreementTally& t) {
  if (p.terminal()) return;
  for (EdgeRef e : decompose(p).base_edges) {
    ++t.edges;
    if (classify_edge_structural(p, e) == classify_edge_direct(p, e)) continue;
    ++t.mismatches;
    if (touches_bundle(p, e)) ++t.bundle_mismatches;
    if (t.examples.size() < 5) t.examples.insert(p.describe() + " " + to_string(e));
  }
}

TEST(EdgeClassAgreement, ExhaustiveClosedTriangles) {
  for (int n = 1; n <= 4; ++n) {
    AgreementTally t;
    for (const Position& p : testing::reachable({Game::Triangles, Boundary::Closed, n})) check_agreement(p, t);
    EXPECT_EQ(t.mismatches, 0) << "n=" << n << " " << (t.examples.empty() ? "" : *t.examples.begin());
    if (n > 1) {
      EXPECT_GT(t.edges, 0);
    }
  }
}

TEST(EdgeClassAgreement, ExhaustiveSmallBoards) {
  for (int n = 1; n <= 4; ++n) {
    for (const GameSpec& spec : testing::four_variants(n)) {
      AgreementTally t;
      for (const Position& p : testing::reachable(spec)) check_agreement(p, t);
      // Anything that disagrees must involve a leg bundle.
      EXPECT_EQ(t.mismatches, t.bundle_mismatches) << to_string(spec);
      if (spec.boundary == Boundary::Closed) {
        EXPECT_EQ(t.mismatches, 0) << to_string(spec);
      }
    }
  }
}

TEST(EdgeClassAgreement, SampledAllVariants) {
  std::mt19937_64 rng(1729);
  AgreementTally closed, open;
  int positions = 0;
  for (int round = 0; positions < 12000; ++round) {
    for (const GameSpec& spec : testing::four_variants(3 + round % 8)) {
      for (const Position& p : testing::random_line(initial_position(spec), rng)) {
        check_agreement(p, spec.boundary == Boundary::Closed ? closed : open);
        ++positions;
      }
    }
  }
  EXPECT_EQ(closed.mismatches, 0) << (closed.examples.empty() ? "" : *closed.examples.begin());
  EXPECT_EQ(open.mismatches, open.bundle_mismatches);
  RecordProperty("open_bundle_mismatches", static_cast<int>(open.bundle_mismatches));
}

TEST(AnalysisProperties, Partition) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 400; ++round) {
    for (const GameSpec& spec : testing::four_variants(1 + round % 8)) {
      for (const Position& p : testing::random_line(initial_position(spec), rng)) {
        const auto d = decompose(p);
        std::vector<EdgeRef> all = d.base_edges;
        all.insert(all.end(), d.pendant_edges.begin(), d.pendant_edges.end());
        ASSERT_EQ(sorted(all), sorted(live_strings(p))) << p.describe();
        ASSERT_EQ(std::set<EdgeRef>(all.begin(), all.end()).size(), all.size());
        std::vector<EdgeRef> chained;
        for (const auto& ch : chains(p)) {
          ASSERT_EQ(ch.length, static_cast<int>(ch.edges.size()) - 1);
          const auto cat = ch.length <= 1 ? ChainCategory::Short
                                          : ch.length == 2 ? ChainCategory::Medium : ChainCategory::Long;
          ASSERT_EQ(ch.category, cat);
          chained.insert(chained.end(), ch.edges.begin(), ch.edges.end());
        }
        ASSERT_EQ(sorted(chained), sorted(d.base_edges)) << p.describe();
      }
    }
  }
}

TEST(AnalysisProperties, TrianglesParity) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 600; ++round) {
    const GameSpec spec{Game::Triangles, Boundary::Closed, 2 + round % 8};
    for (const Position& p : testing::random_line(initial_position(spec), rng)) {
      const auto d = decompose(p);
      for (const auto& ch : chains(p)) {
        // A lone interior leg is a length-0 chain with no exterior leg.
        if (ch.length == 0) continue;
        const auto exterior = std::count_if(ch.edges.begin(), ch.edges.end(), [&](EdgeRef e) {
          return std::find(d.exterior_legs.begin(), d.exterior_legs.end(), e) != d.exterior_legs.end();
        });
        ASSERT_EQ(ch.length % 2 == 0, exterior == 1) << p.describe();
      }
    }
  }
}

int take_everything(Position p) {
  int taken = 0;
  const Player mover = p.to_move();
  while (!p.terminal() && p.to_move() == mover) {
    const auto avail = available_coins(p);
    if (avail.empty()) break;
    const int c = avail.front();
    EdgeRef e = EdgeRef::leg(c);
    if (p.legs(c) == 0) e = c > 0 && p.has_inner(c - 1) ? EdgeRef::inner(c - 1) : EdgeRef::inner(c);
    const auto out = apply_move(p, e);
    taken += static_cast<int>(out.captured.size());
    p = out.resulting;
  }
  return taken;
}

TEST(AnalysisProperties, OpeningLongChainGivesKCoins) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int round = 0; round < 800; ++round) {
    const GameSpec spec = testing::four_variants(3 + round % 7)[round % 2 == 0 ? 0 : 2];
    for (const Position& p : testing::random_line(initial_position(spec), rng)) {
      if (p.terminal() || !available_coins(p).empty()) continue;
      const auto d = decompose(p);
      for (const auto& ch : chains(p)) {
        if (ch.category != ChainCategory::Long) continue;
        const bool pendant_contact = std::any_of(ch.edges.begin(), ch.edges.end(), [&](EdgeRef e) {
          return incident_to_pendant(p, d, e);
        });
        if (pendant_contact) continue;
        for (EdgeRef e : ch.edges) {
          const auto out = apply_move(p, e);
          ASSERT_TRUE(out.captured.empty());
          ASSERT_EQ(take_everything(out.resulting), ch.length) << p.describe() << " " << to_string(e);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(AnalysisProperties, DoubleDealsMirror) {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 300; ++round) {
    for (const GameSpec& spec : testing::four_variants(2 + round % 7)) {
      for (const Position& p : testing::random_line(initial_position(spec), rng)) {
        const int m = p.frame_size();
        std::vector<DoubleDealOpportunity> expected;
        for (const auto& o : find_double_deals(p))
          expected.push_back({mirror_edge(m, o.x), mirror_edge(m, o.y), m - 1 - o.capturable, m - 1 - o.partner});
        auto got = find_double_deals(mirror(p));
        auto key = [](const DoubleDealOpportunity& o) { return std::tuple(o.capturable, o.partner, o.x, o.y); };
        std::sort(expected.begin(), expected.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        ASSERT_EQ(got, expected) << p.describe();
      }
    }
  }
}

}  // namespace
}  // namespace narrow
