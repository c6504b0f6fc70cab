#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"

namespace scha {

struct DepthCount {
  std::size_t literal = 0;
  std::size_t inclusive = 0;

  friend bool operator==(const DepthCount&, const DepthCount&) = default;
};

struct DepthStats {
  std::map<int, DepthCount> perDepth;
  std::map<int, std::size_t> maxDepthHistogram;  // max depth -> excerpts

  friend bool operator==(const DepthStats&, const DepthStats&) = default;
};

using IntervalHistogram = std::map<int, std::size_t>;

/// Slots where the soprano or the bass has a pitch or a hold.
std::size_t verticality_count(const Analysis& a);

DepthStats depth_stats(std::span<const Analysis> corpus);

/// Signed semitone steps between consecutive notes of depth >= `depth` in an
/// outer voice. Throws E_VOICE for alto or tenor.
IntervalHistogram interval_histogram(std::span<const Analysis> corpus, Part voice, int depth);

/// Aggregate report for a corpus, shared by the CLI and the HTTP service.
struct CorpusReport {
  std::size_t excerpts = 0;
  std::size_t notes = 0;
  DepthStats depths;
  std::map<std::size_t, std::size_t> verticalityHistogram;  // length -> excerpts
  std::map<int, IntervalHistogram> trebleIntervals;          // depth -> histogram
  std::map<int, IntervalHistogram> bassIntervals;
};

CorpusReport corpus_report(std::span<const Analysis> corpus);

/// statistic,key,value rows.
std::string report_csv(const CorpusReport& r);
/// depth,interval,count rows for one depth.
std::string histogram_csv(const IntervalHistogram& h);
nlohmann::json to_json(const CorpusReport& r);

}  // namespace scha
