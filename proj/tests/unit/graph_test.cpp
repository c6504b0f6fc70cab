#include <gtest/gtest.h>

#include "scha/error.hpp"
#include "scha/graph.hpp"
#include "support/fixtures.hpp"

namespace scha {
namespace {

using namespace scha::testing;

std::size_t index_of(const ScoreGraph& g, NoteRef r) {
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    if (g.nodes[k].ref == r) return k;
  }
  throw std::runtime_error("missing node");
}

std::vector<GraphEdge> of_type(const ScoreGraph& g, EdgeType t) {
  std::vector<GraphEdge> out;
  for (const auto& e : g.edges) {
    if (e.kind.type == t) out.push_back(e);
  }
  return out;
}

TEST(BuildGraph, FixtureBCounts) {
  const auto g = build_graph(fixture_b());
  EXPECT_EQ(g.nodes.size(), 7u);
  EXPECT_EQ(g.count(EdgeType::Forward), 4u);
  EXPECT_EQ(g.count(EdgeType::Onset), 10u);
  EXPECT_EQ(g.count(EdgeType::Sustain), 0u);
  EXPECT_EQ(g.count(EdgeType::Rest), 0u);
}

TEST(BuildGraph, FixtureBLinearEdges) {
  const auto g = build_graph(fixture_b());
  const auto s0 = index_of(g, {Part::Soprano, 0});
  const auto s1 = index_of(g, {Part::Soprano, 1});
  const auto s2 = index_of(g, {Part::Soprano, 2});
  const auto b0 = index_of(g, {Part::Bass, 0});
  const auto b1 = index_of(g, {Part::Bass, 1});
  // F4->E4 -1, E4->D4 -2, F2->G2 +2; A3 has no neighbour at +-1 or +-2.
  std::vector<GraphEdge> expected{{s0, s1, {EdgeType::Linear, -1}},
                                  {b0, b1, {EdgeType::Linear, 2}},
                                  {s1, s2, {EdgeType::Linear, -2}}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(of_type(g, EdgeType::Linear), expected);
}

TEST(BuildGraph, OnsetEdgesAreSymmetric) {
  const auto adj = build_graph(fixture_b()).adjacency(EdgeType::Onset);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    EXPECT_EQ(adj[i][i], 0);
    for (std::size_t j = 0; j < adj.size(); ++j) EXPECT_EQ(adj[i][j], adj[j][i]);
  }
}

TEST(BuildGraph, NodeOrder) {
  const auto g = build_graph(fixture_b());
  EXPECT_EQ(g.nodes[0].ref, (NoteRef{Part::Soprano, 0}));
  EXPECT_EQ(g.nodes[1].ref, (NoteRef{Part::Alto, 0}));
  EXPECT_EQ(g.nodes[2].ref, (NoteRef{Part::Bass, 0}));
  EXPECT_EQ(g.nodes[3].ref, (NoteRef{Part::Soprano, 1}));
}

TEST(BuildGraph, SustainAndRest) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "_", "R", "D5"}, {1, -1, -1, 1}),
                                    make_voice(Part::Bass, {"C3", "E3", "F3", "G3"}, {1, 0, 0, 1})},
                                   4);
  const auto g = build_graph(a);
  const auto s0 = index_of(g, {Part::Soprano, 0});
  const auto s3 = index_of(g, {Part::Soprano, 3});
  const auto b1 = index_of(g, {Part::Bass, 1});
  EXPECT_EQ(of_type(g, EdgeType::Sustain), (std::vector<GraphEdge>{{s0, b1, {EdgeType::Sustain, 0}}}));
  EXPECT_EQ(of_type(g, EdgeType::Rest), (std::vector<GraphEdge>{{s0, s3, {EdgeType::Rest, 0}}}));
  EXPECT_EQ(g.count(EdgeType::Forward), 3u);
  EXPECT_EQ(g.nodes[s0].duration, 2u);
}

TEST(BuildGraph, LinearWindowAndSameVoice) {
  // C5 at 0, D5 at 3; bass B4 at 1.
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "R", "R", "D5"}, {1, -1, -1, 1}),
                                    make_voice(Part::Bass, {"R", "B4", "R", "R"}, {-1, 1, -1, -1})},
                                   4);
  GraphConfig cfg;
  cfg.linearIntervals = {2, -1};
  auto g = build_graph(a, cfg);
  EXPECT_EQ(g.count(EdgeType::Linear), 2u);
  cfg.linearSameVoice = true;
  g = build_graph(a, cfg);
  EXPECT_EQ(g.count(EdgeType::Linear), 1u);
  cfg.linearWindow = 2;
  g = build_graph(a, cfg);
  EXPECT_EQ(g.count(EdgeType::Linear), 0u);
  cfg.linearIntervals.clear();
  cfg.linearSameVoice = false;
  cfg.linearWindow = 8;
  EXPECT_EQ(build_graph(a, cfg).count(EdgeType::Linear), 0u);
}

TEST(BuildGraph, LinearPicksNearestMatch) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "D5", "C5", "D5"}, {1, 0, 0, 1})}, 4);
  GraphConfig cfg;
  cfg.linearIntervals = {2};
  const auto g = build_graph(a, cfg);
  EXPECT_EQ(of_type(g, EdgeType::Linear),
            (std::vector<GraphEdge>{{0, 1, {EdgeType::Linear, 2}}, {2, 3, {EdgeType::Linear, 2}}}));
}

TEST(NodeFeatures, FixtureBSoprano) {
  const auto g = build_graph(fixture_b());
  ASSERT_EQ(g.features.columns,
            (std::vector<std::string>{"pitch-class", "octave", "duration", "position-absolute",
                                      "position-relative"}));
  EXPECT_EQ(g.features.rows[0], (std::vector<double>{5, 4, 1, 0, 0}));
  const auto b2 = index_of(g, {Part::Bass, 2});
  EXPECT_EQ(g.features.rows[b2], (std::vector<double>{2, 3, 1, 2, 1}));
}

TEST(NodeFeatures, SingleSlotRelativePositionIsZero) {
  const auto t = node_features(single_voice({1}), {"position-relative"});
  EXPECT_EQ(t.rows, (std::vector<std::vector<double>>{{0.0}}));
}

TEST(NodeFeatures, MetricStrength) {
  Analysis a = single_voice({1, 0, 0, 0, 0, 1});
  a.meter = Meter{2, 4, 1, 2};
  const auto t = node_features(a, {"metric-strength"});
  // bar of 4 slots starting at slot 1: 0 1 2 3 | 4 5
  std::vector<std::vector<double>> expected{{0}, {2}, {0}, {1}, {0}, {2}};
  EXPECT_EQ(t.rows, expected);
}

TEST(NodeFeatures, Errors) {
  try {
    node_features(fixture_b(), {"loudness"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Feature);
  }
  try {
    node_features(fixture_b(), {"metric-strength"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Meter);
  }
}

TEST(Export, EmptyAnalysis) {
  const auto g = build_graph(make_analysis({}, 2));
  EXPECT_EQ(graph_to_json(g).dump(), R"({"edges":[],"nodes":[]})");
}

TEST(Export, DotHasOneEdgeLine) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "G5"}, {1, 1})}, 2);
  const auto dot = export_graph(build_graph(a), GraphFormat::Dot);
  std::size_t arrows = 0;
  for (auto p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++arrows;
  EXPECT_EQ(arrows, 1u);
  EXPECT_NE(dot.find("\"sop:0\" -> \"sop:1\" [kind=\"forward\""), std::string::npos);
}

TEST(Export, EdgeListCarriesInterval) {
  const auto doc = graph_to_json(build_graph(fixture_b()));
  std::size_t linear = 0;
  for (const auto& e : doc["edges"]) {
    if (e["kind"] == "linear") {
      ++linear;
      EXPECT_TRUE(e.contains("interval"));
    } else {
      EXPECT_FALSE(e.contains("interval"));
    }
  }
  EXPECT_EQ(linear, 3u);
  EXPECT_EQ(doc["nodes"][0]["features"]["pitch-class"], 5);
}

TEST(ParseIntervalList, Forms) {
  EXPECT_EQ(parse_interval_list("-2,-1,+1, 2"), (std::set<int>{-2, -1, 1, 2}));
  EXPECT_TRUE(parse_interval_list("").empty());
  EXPECT_THROW(parse_interval_list("1,x"), Error);
  EXPECT_THROW(parse_interval_list("1,,2"), Error);
}

}  // namespace
}  // namespace scha
