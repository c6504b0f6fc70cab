#pragma once

#include <random>

#include "scha/analysis.hpp"
#include "scha/validate.hpp"

namespace scha::testing {

struct GenOptions {
  std::size_t maxSlots = 20;
  int maxDepth = 4;
  bool innerVoices = true;
  std::size_t maxNotes = 0;  // 0 = unbounded
  /// Meta, harmony, flags, cross-voice symbols, meter, custom prolongations
  /// and unknown fields.
  bool decorations = true;
};

namespace detail {

inline PitchSpec random_pitch(std::mt19937& rng, Part p) {
  static constexpr char kLetters[] = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};
  const int base_octave = p == Part::Soprano ? 4 : p == Part::Alto ? 4 : p == Part::Tenor ? 3 : 2;
  PitchSpec s;
  s.letter = kLetters[std::uniform_int_distribution<int>(0, 6)(rng)];
  s.octave = base_octave + std::uniform_int_distribution<int>(0, 1)(rng);
  const int r = std::uniform_int_distribution<int>(0, 9)(rng);
  s.accidental = r < 6 ? 0 : r < 8 ? (r == 6 ? 1 : -1) : (r == 8 ? 2 : -2);
  return s;
}

inline std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> words{"Bach", "Chorale", "\"quoted\"", "Schubert", "é ü", "I-V-I",
                                              "line\nbreak", "tab\tchar", ""};
  return words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
}

}  // namespace detail

/// Random analysis that passes strict validation.
inline Analysis random_analysis(std::mt19937& rng, const GenOptions& opts = {}) {
  using detail::random_pitch;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t nv = std::uniform_int_distribution<std::size_t>(1, opts.maxSlots)(rng);
    const int top = std::uniform_int_distribution<int>(1, opts.maxDepth)(rng);

    std::array<bool, 4> present{};
    present[part_index(Part::Soprano)] = unit(rng) < 0.85;
    present[part_index(Part::Bass)] = unit(rng) < 0.7;
    if (!present[0] && !present[3]) present[unit(rng) < 0.5 ? 0 : 3] = true;
    if (opts.innerVoices) {
      present[1] = unit(rng) < 0.45;
      present[2] = unit(rng) < 0.35;
    }
    const bool both_outer = present[0] && present[3];

    Analysis a;
    for (Part p : kParts) {
      Voice& v = a.voice(p);
      v.part = p;
      v.slots.assign(nv, NoteEvent::rest());
      if (!present[part_index(p)]) continue;
      const bool all_zero_inner = !is_outer(p) && both_outer && unit(rng) < 0.4;
      for (std::size_t i = 0; i < nv; ++i) {
        const double r = unit(rng);
        if (r < 0.7) {
          const int d = all_zero_inner ? 0 : std::uniform_int_distribution<int>(0, top)(rng);
          v.slots[i] = NoteEvent::note(random_pitch(rng, p), d);
        } else if (r < 0.85 && i > 0 && !v.slots[i - 1].is_rest()) {
          v.slots[i] = NoteEvent::hold();
        }
      }
      // Outer voices (and inner voices without both outer voices to lean on)
      // must reach the top depth so every layer stays clusterable.
      if (is_outer(p) || !both_outer) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, nv - 1)(rng);
        // A rest is never followed by a hold, so replacing one keeps holds valid.
        if (!v.slots[k].is_pitch()) v.slots[k] = NoteEvent::note(random_pitch(rng, p), top);
        v.slots[k].depth = top;
      }
    }

    if (opts.decorations) {
      if (unit(rng) < 0.7) a.meta.analyst = detail::random_text(rng);
      if (unit(rng) < 0.7) a.meta.composer = detail::random_text(rng);
      if (unit(rng) < 0.7) a.meta.title = detail::random_text(rng);
      if (unit(rng) < 0.3) a.meta.subtitle = detail::random_text(rng);
      if (unit(rng) < 0.3) a.meta.description = detail::random_text(rng);
      a.key = {unit(rng) < 0.5 ? "G" : "Bb", unit(rng) < 0.5 ? Mode::Major : Mode::Minor};
      std::vector<NoteRef> notes = a.notes();
      for (Part p : kParts) {
        for (auto& e : a.voice(p).slots) {
          if (!e.is_pitch()) continue;
          e.ursatz = unit(rng) < 0.1;
          e.flagged = unit(rng) < 0.1;
          e.parenthesized = unit(rng) < 0.1;
          e.accidentalDisplayed = e.pitch().accidental != 0 && unit(rng) < 0.5;
          if (unit(rng) < 0.2) e.harmony = unit(rng) < 0.5 ? "V7" : "^3";
        }
      }
      if (notes.size() >= 2 && unit(rng) < 0.3) {
        auto pick = [&] { return notes[std::uniform_int_distribution<std::size_t>(0, notes.size() - 1)(rng)]; };
        a.crossVoice.push_back({unit(rng) < 0.5 ? CrossVoiceKind::VoiceExchange : CrossVoiceKind::RelationLine,
                                pick(), pick()});
      }
      if (unit(rng) < 0.3) a.meter = Meter{3, 4, 1, 2};
      if (notes.size() >= 3 && unit(rng) < 0.2) {
        const NoteRef first = notes.front(), last = notes.back();
        if (first.index < last.index) {
          CustomProlongation c{2, first, {}, last};
          for (const auto& n : notes) {
            if (n.index > first.index && n.index < last.index) {
              c.middles.push_back(n);
              break;
            }
          }
          a.customProlongations.push_back(c);
        }
      }
      if (unit(rng) < 0.2) a.extra["x-source"] = {{"tool", "gen"}, {"n", 3}};
    }

    if (opts.maxNotes && a.note_count() > opts.maxNotes) continue;
    if (!validate(a).has_errors()) return a;
  }
}

}  // namespace scha::testing
