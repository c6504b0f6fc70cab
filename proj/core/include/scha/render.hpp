#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scha/analysis.hpp"

namespace scha {

namespace layout {
inline constexpr int kSlotWidth = 40;
inline constexpr int kStemBase = 14;
inline constexpr int kStemPerDepth = 6;
inline constexpr int kLineGap = 10;  // between staff lines
inline constexpr int kMarginLeft = 60;
inline constexpr int kTopMargin = 60;
inline constexpr int kStaffGap = 120;  // top of treble staff to top of bass staff
}  // namespace layout

struct NoteGlyph {
  std::size_t slot = 0;
  /// Diatonic steps above the bottom staff line (E4 treble, G2 bass).
  int staffPosition = 0;
  int depth = 0;
  int stemLength = 0;
  std::string pitch;
  int accidental = 0;
  bool accidentalDisplayed = false;
  bool parenthesized = false;
  bool flagged = false;
  bool ursatz = false;
};

struct Beam {
  int level = 1;
  std::size_t start = 0;  // slot of first note
  std::size_t end = 0;    // slot of last note

  friend bool operator==(const Beam&, const Beam&) = default;
  friend auto operator<=>(const Beam&, const Beam&) = default;
};

struct Slur {
  std::size_t start = 0;
  std::size_t end = 0;
  int level = 1;

  friend bool operator==(const Slur&, const Slur&) = default;
  friend auto operator<=>(const Slur&, const Slur&) = default;
};

struct TextMark {
  std::size_t slot = 0;
  std::string text;
};

struct VoiceRender {
  Part part = Part::Soprano;
  std::vector<NoteGlyph> notes;
  std::vector<Beam> beams;  // outer voices only
  std::vector<Slur> slurs;  // outer voices only
  std::vector<TextMark> harmony;
};

struct RenderModel {
  std::size_t slots = 0;
  std::array<VoiceRender, 4> voices;
  std::vector<CrossVoiceSymbol> crossVoice;
  std::string title;
};

/// Beams cover maximal runs (length >= 2) of consecutive notes with depth >= d
/// for every level d >= 1; slurs mirror the non-empty prolongations. Both are
/// produced for the soprano and bass only.
RenderModel derive_render_model(const Analysis& a);

/// Deterministic SVG 1.1 with stable element ids: note-sop-3,
/// beam-sop-1-0-1 (level, start, end), slur-sop-1-0-4 (level, start, end).
std::string render_svg(const RenderModel& m);

}  // namespace scha
