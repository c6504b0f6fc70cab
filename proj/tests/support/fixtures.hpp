#pragma once

#include <string>
#include <vector>

#include "scha/analysis.hpp"
#include "scha/pitch.hpp"

namespace scha::testing {

/// Builds a voice from tokens ("C5", "R", "_") and depths (-1 for none).
inline Voice make_voice(Part part, const std::vector<std::string>& tokens, const std::vector<int>& depths) {
  Voice v{part, {}};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "R") v.slots.push_back(NoteEvent::rest());
    else if (tokens[i] == "_") v.slots.push_back(NoteEvent::hold());
    else v.slots.push_back(NoteEvent::note(parse_pitch(tokens[i]), depths.at(i)));
  }
  return v;
}

inline Voice rest_voice(Part part, std::size_t n) { return Voice{part, std::vector<NoteEvent>(n)}; }

/// Analysis with the given voices; omitted voices are all rests.
inline Analysis make_analysis(std::vector<Voice> voices, std::size_t nv) {
  Analysis a;
  for (Part p : kParts) a.voice(p) = rest_voice(p, nv);
  for (auto& v : voices) a.voice(v.part) = std::move(v);
  return a;
}

/// Soprano C5 D5 E5 D5 C5 with depths 3 1 0 2 3; other voices silent.
inline Analysis fixture_a() {
  Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "D5", "E5", "D5", "C5"}, {3, 1, 0, 2, 3})}, 5);
  a.meta.analyst = "test";
  a.meta.composer = "anon";
  a.meta.title = "Fixture A";
  return a;
}

/// Soprano F4 E4 D4 (2 1 2), bass F2 G2 D3 (2 0 2), alto A3 at slot 0 (0).
inline Analysis fixture_b() {
  Analysis a = make_analysis({make_voice(Part::Soprano, {"F4", "E4", "D4"}, {2, 1, 2}),
                              make_voice(Part::Alto, {"A3", "R", "R"}, {0, -1, -1}),
                              make_voice(Part::Bass, {"F2", "G2", "D3"}, {2, 0, 2})},
                             3);
  a.meta.title = "Fixture B";
  a.key = {"F", Mode::Major};
  return a;
}

inline Analysis single_voice(const std::vector<int>& depths, Part part = Part::Soprano) {
  static const std::vector<std::string> scale{"C5", "D5", "E5", "F5", "G5", "A5", "B5"};
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < depths.size(); ++i) tokens.push_back(scale[i % scale.size()]);
  return make_analysis({make_voice(part, tokens, depths)}, depths.size());
}

}  // namespace scha::testing
