#include "scha/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "scha/error.hpp"

namespace scha {
namespace {

std::vector<GraphNode> collect_nodes(const Analysis& a) {
  std::vector<GraphNode> nodes;
  for (const NoteRef& ref : a.notes()) {
    const auto& slots = a.voice(ref.part).slots;
    GraphNode n{ref, slots[ref.index].pitch(), ref.index, 1};
    for (std::size_t j = ref.index + 1; j < slots.size() && slots[j].is_hold(); ++j) ++n.duration;
    nodes.push_back(n);
  }
  return nodes;
}

int metric_strength(const Meter& m, std::size_t slot) {
  const long long bar = static_cast<long long>(m.beatsPerBar) * m.slotsPerBeat;
  long long pos = (static_cast<long long>(slot) - m.offset) % bar;
  if (pos < 0) pos += bar;
  if (pos == 0) return 2;
  return pos % m.slotsPerBeat == 0 ? 1 : 0;
}

struct EdgeStyle {
  std::string_view style;
  std::string_view color;
};

EdgeStyle dot_style(EdgeType t) {
  switch (t) {
    case EdgeType::Forward: return {"solid", "black"};
    case EdgeType::Onset: return {"dotted", "blue"};
    case EdgeType::Sustain: return {"bold", "darkgreen"};
    case EdgeType::Rest: return {"dashed", "gray40"};
    case EdgeType::Linear: return {"solid", "red"};
  }
  return {"solid", "black"};
}

std::string edge_label(const EdgeKind& k) {
  if (k.type == EdgeType::Linear) return fmt::format("linear({:+d})", k.interval);
  return std::string(to_string(k.type));
}

nlohmann::json number(double v) {
  if (std::floor(v) == v && std::abs(v) < 1e15) return static_cast<long long>(v);
  return v;
}

}  // namespace

std::string_view to_string(EdgeType t) noexcept {
  switch (t) {
    case EdgeType::Forward: return "forward";
    case EdgeType::Onset: return "onset";
    case EdgeType::Sustain: return "sustain";
    case EdgeType::Rest: return "rest";
    case EdgeType::Linear: return "linear";
  }
  return "?";
}

std::size_t ScoreGraph::count(EdgeType t) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [t](const GraphEdge& e) { return e.kind.type == t; }));
}

std::vector<std::vector<std::uint8_t>> ScoreGraph::adjacency(EdgeType t) const {
  std::vector<std::vector<std::uint8_t>> m(nodes.size(), std::vector<std::uint8_t>(nodes.size(), 0));
  for (const auto& e : edges) {
    if (e.kind.type == t) m[e.src][e.dst] = 1;
  }
  return m;
}

std::vector<std::string> default_feature_columns(const Analysis& a) {
  std::vector<std::string> cols{"pitch-class", "octave", "duration", "position-absolute",
                                "position-relative"};
  if (a.meter) cols.emplace_back("metric-strength");
  return cols;
}

FeatureTable node_features(const Analysis& a, const std::vector<std::string>& columns) {
  static const std::vector<std::string_view> known{"pitch-class", "octave", "duration",
                                                   "position-absolute", "position-relative",
                                                   "metric-strength"};
  for (const auto& c : columns) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw Error(ErrorCode::Feature, "unknown feature column \"" + c + "\"");
    }
    if (c == "metric-strength" && !a.meter) {
      throw Error(ErrorCode::Meter, "metric-strength requires a meter");
    }
  }

  FeatureTable table;
  table.columns = columns;
  const std::size_t nv = a.slot_count();
  for (const GraphNode& n : collect_nodes(a)) {
    std::vector<double> row;
    row.reserve(columns.size());
    for (const auto& c : columns) {
      if (c == "pitch-class") row.push_back(midi_number(n.pitch) % 12);
      else if (c == "octave") row.push_back(n.pitch.octave);
      else if (c == "duration") row.push_back(static_cast<double>(n.duration));
      else if (c == "position-absolute") row.push_back(static_cast<double>(n.onset));
      else if (c == "position-relative")
        row.push_back(nv <= 1 ? 0.0 : static_cast<double>(n.onset) / static_cast<double>(nv - 1));
      else row.push_back(metric_strength(*a.meter, n.onset));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScoreGraph build_graph(const Analysis& a, const GraphConfig& cfg) {
  ScoreGraph g;
  g.nodes = collect_nodes(a);

  std::map<NoteRef, std::size_t> id;
  std::map<std::size_t, std::vector<std::size_t>> by_onset;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    id.emplace(g.nodes[k].ref, k);
    by_onset[g.nodes[k].onset].push_back(k);
  }

  std::set<GraphEdge> edges;

  // Forward and rest edges between consecutive onsets of a voice.
  for (Part p : kParts) {
    const auto& slots = a.voice(p).slots;
    std::optional<std::size_t> prev;
    bool rest_between = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].is_rest()) {
        rest_between = true;
      } else if (slots[i].is_pitch()) {
        if (prev) {
          const EdgeType t = rest_between ? EdgeType::Rest : EdgeType::Forward;
          edges.insert({id.at({p, *prev}), id.at({p, i}), {t, 0}});
        }
        prev = i;
        rest_between = false;
      }
    }
  }

  for (const auto& [onset, group] : by_onset) {
    for (std::size_t u : group) {
      for (std::size_t v : group) {
        if (u != v) edges.insert({u, v, {EdgeType::Onset, 0}});
      }
    }
  }

  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    const GraphNode& n = g.nodes[u];
    for (std::size_t j = n.onset + 1; j < n.onset + n.duration; ++j) {
      auto it = by_onset.find(j);
      if (it == by_onset.end()) continue;
      for (std::size_t v : it->second) edges.insert({u, v, {EdgeType::Sustain, 0}});
    }
  }

  if (!cfg.linearIntervals.empty()) {
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      const GraphNode& n = g.nodes[u];
      const int from = midi_number(n.pitch);
      for (int k : cfg.linearIntervals) {
        // Nodes are sorted by (onset, part), so the first match is the nearest.
        for (std::size_t v = u + 1; v < g.nodes.size(); ++v) {
          const GraphNode& m = g.nodes[v];
          if (m.onset <= n.onset) continue;
          if (m.onset - n.onset > cfg.linearWindow) break;
          if (cfg.linearSameVoice && m.ref.part != n.ref.part) continue;
          if (midi_number(m.pitch) - from == k) {
            edges.insert({u, v, {EdgeType::Linear, k}});
            break;
          }
        }
      }
    }
  }

  g.edges.assign(edges.begin(), edges.end());
  g.features = node_features(a, cfg.featureColumns.empty() ? default_feature_columns(a) : cfg.featureColumns);
  return g;
}

std::set<int> parse_interval_list(std::string_view csv) {
  std::set<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view item = csv.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    int v = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw Error(ErrorCode::Argument, "bad interval \"" + std::string(item) + "\"");
    }
    out.insert(v);
    pos = comma + 1;
  }
  return out;
}

nlohmann::json graph_to_json(const ScoreGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const GraphNode& n = g.nodes[k];
    nlohmann::json features = nlohmann::json::object();
    if (k < g.features.rows.size()) {
      for (std::size_t c = 0; c < g.features.columns.size(); ++c) {
        features[g.features.columns[c]] = number(g.features.rows[k][c]);
      }
    }
    nodes.push_back({{"id", to_string(n.ref)},
                     {"part", part_name(n.ref.part)},
                     {"index", n.ref.index},
                     {"pitch", to_string(n.pitch)},
                     {"features", std::move(features)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) {
    nlohmann::json edge{{"src", to_string(g.nodes[e.src].ref)},
                        {"dst", to_string(g.nodes[e.dst].ref)},
                        {"kind", to_string(e.kind.type)}};
    if (e.kind.type == EdgeType::Linear) edge["interval"] = e.kind.interval;
    edges.push_back(std::move(edge));
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

std::string export_graph(const ScoreGraph& g, GraphFormat format) {
  if (format == GraphFormat::EdgeListJson) return graph_to_json(g).dump() + "\n";

  std::string out = "digraph scha {\n  node [shape=ellipse];\n";
  for (const auto& n : g.nodes) {
    out += fmt::format("  \"{}\" [label=\"{}\"];\n", to_string(n.ref), to_string(n.pitch));
  }
  for (const auto& e : g.edges) {
    const EdgeStyle s = dot_style(e.kind.type);
    std::string attrs = fmt::format("kind=\"{}\", label=\"{}\", style={}, color={}", to_string(e.kind.type),
                                    edge_label(e.kind), s.style, s.color);
    if (e.kind.type == EdgeType::Linear) attrs += fmt::format(", interval={}", e.kind.interval);
    out += fmt::format("  \"{}\" -> \"{}\" [{}];\n", to_string(g.nodes[e.src].ref),
                       to_string(g.nodes[e.dst].ref), attrs);
  }
  out += "}\n";
  return out;
}

}  // namespace scha
