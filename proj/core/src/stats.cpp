#include "scha/stats.hpp"

#include <fmt/format.h>

#include "scha/error.hpp"

namespace scha {
namespace {

std::vector<int> outer_subsequence(const Analysis& a, Part voice, int depth) {
  std::vector<int> midi;
  for (const auto& e : a.voice(voice).slots) {
    if (e.is_pitch() && e.depth.value_or(0) >= depth) midi.push_back(midi_number(e.pitch()));
  }
  return midi;
}

template <typename K, typename V>
nlohmann::json keyed(const std::map<K, V>& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

}  // namespace

std::size_t verticality_count(const Analysis& a) {
  const auto& sop = a.voice(Part::Soprano).slots;
  const auto& bass = a.voice(Part::Bass).slots;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.slot_count(); ++i) {
    const bool s = i < sop.size() && !sop[i].is_rest();
    const bool b = i < bass.size() && !bass[i].is_rest();
    if (s || b) ++n;
  }
  return n;
}

DepthStats depth_stats(std::span<const Analysis> corpus) {
  DepthStats stats;
  std::map<int, std::size_t> literal;
  for (const Analysis& a : corpus) {
    bool any = false;
    for (const auto& v : a.voices) {
      for (const auto& e : v.slots) {
        if (!e.is_pitch()) continue;
        ++literal[e.depth.value_or(0)];
        any = true;
      }
    }
    if (any) ++stats.maxDepthHistogram[a.max_depth()];
  }
  if (literal.empty()) return stats;

  const int top = literal.rbegin()->first;
  std::size_t running = 0;
  for (int d = top; d >= 0; --d) {
    const auto it = literal.find(d);
    const std::size_t lit = it == literal.end() ? 0 : it->second;
    running += lit;
    stats.perDepth[d] = {lit, running};
  }
  return stats;
}

IntervalHistogram interval_histogram(std::span<const Analysis> corpus, Part voice, int depth) {
  if (!is_outer(voice)) {
    throw Error(ErrorCode::Voice, "interval histograms are defined for the treble and bass only",
                std::string(part_name(voice)));
  }
  IntervalHistogram h;
  for (const Analysis& a : corpus) {
    const auto seq = outer_subsequence(a, voice, depth);
    for (std::size_t k = 1; k < seq.size(); ++k) ++h[seq[k] - seq[k - 1]];
  }
  return h;
}

CorpusReport corpus_report(std::span<const Analysis> corpus) {
  CorpusReport r;
  r.excerpts = corpus.size();
  r.depths = depth_stats(corpus);
  int top = 0;
  for (const Analysis& a : corpus) {
    r.notes += a.note_count();
    ++r.verticalityHistogram[verticality_count(a)];
    top = std::max(top, a.max_depth());
  }
  if (!corpus.empty()) {
    for (int d = 0; d <= top; ++d) {
      r.trebleIntervals[d] = interval_histogram(corpus, Part::Soprano, d);
      r.bassIntervals[d] = interval_histogram(corpus, Part::Bass, d);
    }
  }
  return r;
}

std::string report_csv(const CorpusReport& r) {
  std::string out = "statistic,key,value\n";
  out += fmt::format("excerpts,,{}\nnotes,,{}\n", r.excerpts, r.notes);
  for (const auto& [d, c] : r.depths.perDepth) out += fmt::format("literal,{},{}\n", d, c.literal);
  for (const auto& [d, c] : r.depths.perDepth) out += fmt::format("inclusive,{},{}\n", d, c.inclusive);
  for (const auto& [d, n] : r.depths.maxDepthHistogram) out += fmt::format("max_depth,{},{}\n", d, n);
  for (const auto& [len, n] : r.verticalityHistogram) out += fmt::format("verticalities,{},{}\n", len, n);
  return out;
}

std::string histogram_csv(const IntervalHistogram& h) {
  std::string out = "interval,count\n";
  for (const auto& [interval, n] : h) out += fmt::format("{},{}\n", interval, n);
  return out;
}

nlohmann::json to_json(const CorpusReport& r) {
  std::map<int, std::size_t> literal, inclusive;
  for (const auto& [d, c] : r.depths.perDepth) {
    literal[d] = c.literal;
    inclusive[d] = c.inclusive;
  }
  nlohmann::json treble = nlohmann::json::object(), bass = nlohmann::json::object();
  for (const auto& [d, h] : r.trebleIntervals) treble[std::to_string(d)] = keyed(h);
  for (const auto& [d, h] : r.bassIntervals) bass[std::to_string(d)] = keyed(h);
  return {{"excerpts", r.excerpts},
          {"notes", r.notes},
          {"literal", keyed(literal)},
          {"inclusive", keyed(inclusive)},
          {"maxDepthHistogram", keyed(r.depths.maxDepthHistogram)},
          {"verticalityHistogram", keyed(r.verticalityHistogram)},
          {"intervals", {{"treble", std::move(treble)}, {"bass", std::move(bass)}}}};
}

}  // namespace scha
