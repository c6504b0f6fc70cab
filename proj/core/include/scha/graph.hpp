#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"

namespace scha {

enum class EdgeType { Forward, Onset, Sustain, Rest, Linear };

std::string_view to_string(EdgeType t) noexcept;

struct EdgeKind {
  EdgeType type = EdgeType::Forward;
  int interval = 0;  // signed semitones, meaningful for Linear only

  friend bool operator==(const EdgeKind&, const EdgeKind&) = default;
  friend auto operator<=>(const EdgeKind&, const EdgeKind&) = default;
};

struct GraphNode {
  NoteRef ref;
  PitchSpec pitch;
  std::size_t onset = 0;     // slot index
  std::size_t duration = 1;  // slots covered including holds

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t src = 0;  // node indices
  std::size_t dst = 0;
  EdgeKind kind;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // one row per node
};

struct ScoreGraph {
  std::vector<GraphNode> nodes;  // (onset, part) order
  std::vector<GraphEdge> edges;  // sorted by (src, dst, kind)
  FeatureTable features;

  std::size_t count(EdgeType t) const noexcept;
  /// Boolean adjacency for one edge type (Linear matches any interval).
  std::vector<std::vector<std::uint8_t>> adjacency(EdgeType t) const;
};

struct GraphConfig {
  std::set<int> linearIntervals{-2, -1, 1, 2};
  std::size_t linearWindow = 8;
  bool linearSameVoice = false;
  /// Feature columns to attach; empty means every column the analysis supports.
  std::vector<std::string> featureColumns;
};

/// Pitch onsets become nodes; holds extend the preceding node.
ScoreGraph build_graph(const Analysis& a, const GraphConfig& cfg = {});

/// Supported: pitch-class, octave, duration, position-absolute,
/// position-relative, metric-strength. Rows follow build_graph's node order.
/// Throws E_FEATURE for unknown names, E_METER for metric-strength without a
/// meter.
FeatureTable node_features(const Analysis& a, const std::vector<std::string>& columns);

/// Default column list: all of the above, metric-strength only with a meter.
std::vector<std::string> default_feature_columns(const Analysis& a);

/// "-2,-1,1,2" -> {-2,-1,1,2}; an empty string gives the empty set. Throws
/// E_ARGUMENT on malformed entries.
std::set<int> parse_interval_list(std::string_view csv);

enum class GraphFormat { EdgeListJson, Dot };

std::string export_graph(const ScoreGraph& g, GraphFormat format);
nlohmann::json graph_to_json(const ScoreGraph& g);

}  // namespace scha
