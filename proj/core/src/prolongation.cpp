#include "scha/prolongation.hpp"

#include <algorithm>
#include <tuple>

#include "scha/error.hpp"

namespace scha {
namespace {

std::size_t voice_rank(const std::optional<Part>& v) { return v ? part_index(*v) : kParts.size(); }

}  // namespace

std::vector<Prolongation> prolongations_at_level(const Analysis& a, int level) {
  const int max_depth = a.max_depth();
  if (level < 1 || level > max_depth) {
    throw Error(ErrorCode::Level,
                "level " + std::to_string(level) + " outside [1, " + std::to_string(max_depth) + "]");
  }
  std::vector<Prolongation> out;
  for (Part p : kParts) {
    const auto& slots = a.voice(p).slots;
    std::optional<std::size_t> prev;
    std::vector<NoteRef> between;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].is_pitch()) continue;
      if (slots[i].depth.value_or(0) >= level) {
        if (prev) out.push_back({level, p, {p, *prev}, between, {p, i}, false});
        prev = i;
        between.clear();
      } else if (prev) {
        between.push_back({p, i});
      }
    }
  }
  return out;
}

ProlongationSet all_prolongations(const Analysis& a) {
  ProlongationSet out;
  for (int level = 1; level <= a.max_depth(); ++level) {
    auto at = prolongations_at_level(a, level);
    out.insert(out.end(), at.begin(), at.end());
  }
  for (const auto& c : a.customProlongations) {
    Prolongation p{c.level, c.start.part, c.start, c.middles, c.end, true};
    const bool same = c.end.part == c.start.part &&
                      std::all_of(c.middles.begin(), c.middles.end(),
                                  [&](const NoteRef& m) { return m.part == c.start.part; });
    if (!same) p.voice.reset();
    out.push_back(std::move(p));
  }
  return out;
}

ProlongationSet nonempty_prolongations(const ProlongationSet& all) {
  ProlongationSet out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [](const Prolongation& p) { return !p.middles.empty(); });
  std::stable_sort(out.begin(), out.end(), [](const Prolongation& x, const Prolongation& y) {
    return std::tuple(x.level, voice_rank(x.voice), x.start.index) <
           std::tuple(y.level, voice_rank(y.voice), y.start.index);
  });
  return out;
}

std::string export_kirlin_text(const Analysis& a) {
  std::string out;
  for (const auto& p : nonempty_prolongations(all_prolongations(a))) {
    out += to_string(p.start);
    out += " (";
    for (const auto& m : p.middles) {
      out += ' ';
      out += to_string(m);
    }
    out += " ) ";
    out += to_string(p.end);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Prolongation& p) {
  nlohmann::json middles = nlohmann::json::array();
  for (const auto& m : p.middles) middles.push_back(to_string(m));
  return {{"level", p.level},
          {"voice", p.voice ? std::string(part_name(*p.voice)) : std::string("mixed")},
          {"start", to_string(p.start)},
          {"middles", std::move(middles)},
          {"end", to_string(p.end)},
          {"custom", p.custom}};
}

nlohmann::json prolongations_to_json(const ProlongationSet& set) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : set) arr.push_back(to_json(p));
  return {{"prolongations", std::move(arr)}};
}

}  // namespace scha
