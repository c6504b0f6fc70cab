#include "scha/render.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "scha/prolongation.hpp"

namespace scha {
namespace {

using namespace layout;

constexpr int kStepHeight = kLineGap / 2;
constexpr int kStaffHeight = 4 * kLineGap;

const PitchSpec kTrebleBottom{'E', 0, 4};
const PitchSpec kBassBottom{'G', 0, 2};

bool on_treble(Part p) { return p == Part::Soprano || p == Part::Alto; }
bool stem_up(Part p) { return p == Part::Soprano || p == Part::Tenor; }

int staff_top(Part p) { return on_treble(p) ? kTopMargin : kTopMargin + kStaffGap; }
int staff_bottom(Part p) { return staff_top(p) + kStaffHeight; }

int slot_x(std::size_t slot) { return kMarginLeft + static_cast<int>(slot) * kSlotWidth + kSlotWidth / 2; }
int note_y(Part p, const NoteGlyph& g) { return staff_bottom(p) - g.staffPosition * kStepHeight; }

/// Stem tip for a given stem length.
int stem_tip(Part p, const NoteGlyph& g, int length) {
  return stem_up(p) ? note_y(p, g) - length : note_y(p, g) + length;
}
int stem_x(Part p, const NoteGlyph& g) { return slot_x(g.slot) + (stem_up(p) ? 6 : -6); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view accidental_glyph(int acc) {
  switch (acc) {
    case -2: return "\xF0\x9D\x84\xAB";  // double flat
    case -1: return "\xE2\x99\xAD";      // flat
    case 1: return "\xE2\x99\xAF";       // sharp
    case 2: return "\xF0\x9D\x84\xAA";   // double sharp
    default: return "\xE2\x99\xAE";      // natural
  }
}

const NoteGlyph* glyph_at(const VoiceRender& v, std::size_t slot) {
  for (const auto& g : v.notes) {
    if (g.slot == slot) return &g;
  }
  return nullptr;
}

}  // namespace

RenderModel derive_render_model(const Analysis& a) {
  RenderModel m;
  m.slots = a.slot_count();
  m.crossVoice = a.crossVoice;
  m.title = a.meta.title.value_or("");

  for (Part p : kParts) {
    VoiceRender& vr = m.voices[part_index(p)];
    vr.part = p;
    const int bottom = diatonic_position(on_treble(p) ? kTrebleBottom : kBassBottom);
    const auto& slots = a.voice(p).slots;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const NoteEvent& e = slots[i];
      if (e.harmony) vr.harmony.push_back({i, *e.harmony});
      if (!e.is_pitch()) continue;
      NoteGlyph g;
      g.slot = i;
      g.staffPosition = diatonic_position(e.pitch()) - bottom;
      g.depth = e.depth.value_or(0);
      g.stemLength = kStemBase + kStemPerDepth * (is_outer(p) ? g.depth : 0);
      g.pitch = to_string(e.pitch());
      g.accidental = e.pitch().accidental;
      g.accidentalDisplayed = e.accidentalDisplayed;
      g.parenthesized = e.parenthesized;
      g.flagged = e.flagged;
      g.ursatz = e.ursatz;
      vr.notes.push_back(std::move(g));
    }
    if (!is_outer(p)) continue;

    const int voice_max = a.voice(p).max_depth().value_or(0);
    for (int d = 1; d <= voice_max; ++d) {
      std::size_t run = 0;
      std::size_t first = 0;
      for (std::size_t k = 0; k <= vr.notes.size(); ++k) {
        if (k < vr.notes.size() && vr.notes[k].depth >= d) {
          if (run++ == 0) first = k;
          continue;
        }
        if (run >= 2) vr.beams.push_back({d, vr.notes[first].slot, vr.notes[k - 1].slot});
        run = 0;
      }
    }
    for (int level = 1; level <= a.max_depth(); ++level) {
      for (const auto& pr : prolongations_at_level(a, level)) {
        if (pr.voice == p && !pr.middles.empty()) vr.slurs.push_back({pr.start.index, pr.end.index, level});
      }
    }
  }
  return m;
}

std::string render_svg(const RenderModel& m) {
  const int width = kMarginLeft + static_cast<int>(m.slots) * kSlotWidth + kSlotWidth / 2;
  const int height = kTopMargin + kStaffGap + kStaffHeight + 120;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      width, height);
  if (!m.title.empty()) {
    out += fmt::format("<text id=\"title\" class=\"title\" x=\"{}\" y=\"20\" font-size=\"14\">{}</text>\n",
                       kMarginLeft, escape(m.title));
  }

  for (Part p : {Part::Soprano, Part::Bass}) {
    const std::string_view staff = on_treble(p) ? "treble" : "bass";
    out += fmt::format("<g id=\"staff-{}\" class=\"staff\" stroke=\"black\" stroke-width=\"1\">\n", staff);
    for (int line = 0; line < 5; ++line) {
      const int y = staff_top(p) + line * kLineGap;
      out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", kMarginLeft - 20, y, width, y);
    }
    out += "</g>\n";
    out += fmt::format("<text class=\"clef\" x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", 8,
                       staff_top(p) + 2 * kLineGap + 4, staff);
  }

  for (const VoiceRender& v : m.voices) {
    const Part p = v.part;
    const std::string_view name = part_short_name(p);
    out += fmt::format("<g id=\"voice-{}\" class=\"voice\">\n", name);

    for (const NoteGlyph& g : v.notes) {
      const int x = slot_x(g.slot);
      const int y = note_y(p, g);
      // Ledger lines.
      for (int pos = -2; pos >= g.staffPosition; pos -= 2) {
        const int ly = staff_bottom(p) - pos * kStepHeight;
        out += fmt::format("<line class=\"ledger\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
                           x - 10, ly, x + 10, ly);
      }
      for (int pos = 10; pos <= g.staffPosition; pos += 2) {
        const int ly = staff_bottom(p) - pos * kStepHeight;
        out += fmt::format("<line class=\"ledger\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
                           x - 10, ly, x + 10, ly);
      }
      out += fmt::format(
          "<ellipse id=\"note-{}-{}\" class=\"notehead\" cx=\"{}\" cy=\"{}\" rx=\"6\" ry=\"4\" "
          "data-pitch=\"{}\" data-depth=\"{}\"/>\n",
          name, g.slot, x, y, g.pitch, g.depth);
      out += fmt::format(
          "<line id=\"stem-{}-{}\" class=\"stem\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
          name, g.slot, stem_x(p, g), y, stem_x(p, g), stem_tip(p, g, g.stemLength));
      if (is_outer(p)) {
        out += fmt::format("<text class=\"depth\" x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>\n", x - 18,
                           y + 3, g.depth);
      }
      if (g.accidentalDisplayed) {
        out += fmt::format("<text class=\"accidental\" x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", x - 13,
                           y + 4, accidental_glyph(g.accidental));
      }
      if (g.parenthesized) {
        out += fmt::format(
            "<text id=\"paren-open-{0}-{1}\" class=\"paren\" x=\"{2}\" y=\"{4}\" font-size=\"12\">(</text>\n"
            "<text id=\"paren-close-{0}-{1}\" class=\"paren\" x=\"{3}\" y=\"{4}\" font-size=\"12\">)</text>\n",
            name, g.slot, x - 11, x + 8, y + 4);
      }
      if (g.flagged) {
        const int sx = stem_x(p, g);
        const int tip = stem_tip(p, g, g.stemLength);
        const int dir = stem_up(p) ? 1 : -1;
        out += fmt::format(
            "<path id=\"flag-{}-{}\" class=\"flag\" d=\"M {} {} q 8 {} 6 {}\" fill=\"none\" stroke=\"black\"/>\n",
            name, g.slot, sx, tip, 6 * dir, 12 * dir);
      }
      if (g.ursatz) {
        const int uy = stem_up(p) ? staff_top(p) - 30 : staff_bottom(p) + 34;
        out += fmt::format("<text id=\"ursatz-{}-{}\" class=\"ursatz\" x=\"{}\" y=\"{}\" font-size=\"12\">^</text>\n",
                           name, g.slot, x - 3, uy);
      }
    }

    for (const Beam& b : v.beams) {
      const NoteGlyph* s = glyph_at(v, b.start);
      const NoteGlyph* e = glyph_at(v, b.end);
      const int len = kStemBase + kStemPerDepth * b.level;
      out += fmt::format(
          "<line id=\"beam-{}-{}-{}-{}\" class=\"beam\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" "
          "stroke=\"black\" stroke-width=\"3\"/>\n",
          name, b.level, b.start, b.end, stem_x(p, *s), stem_tip(p, *s, len), stem_x(p, *e),
          stem_tip(p, *e, len));
    }

    for (const Slur& sl : v.slurs) {
      const NoteGlyph* s = glyph_at(v, sl.start);
      const NoteGlyph* e = glyph_at(v, sl.end);
      const int dir = stem_up(p) ? 1 : -1;  // curve away from the stems
      const int x1 = slot_x(s->slot), y1 = note_y(p, *s) + 7 * dir;
      const int x2 = slot_x(e->slot), y2 = note_y(p, *e) + 7 * dir;
      const int ctrl = (dir > 0 ? std::max(y1, y2) : std::min(y1, y2)) + (10 + 4 * sl.level) * dir;
      out += fmt::format(
          "<path id=\"slur-{}-{}-{}-{}\" class=\"slur\" d=\"M {} {} Q {} {} {} {}\" fill=\"none\" "
          "stroke=\"black\"/>\n",
          name, sl.level, sl.start, sl.end, x1, y1, (x1 + x2) / 2, ctrl, x2, y2);
    }

    for (const TextMark& t : v.harmony) {
      const int y = staff_bottom(Part::Bass) + 40 + 14 * static_cast<int>(part_index(p));
      out += fmt::format("<text class=\"harmony\" x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n",
                         slot_x(t.slot) - 6, y, escape(t.text));
    }
    out += "</g>\n";
  }

  for (std::size_t k = 0; k < m.crossVoice.size(); ++k) {
    const auto& c = m.crossVoice[k];
    const NoteGlyph* s = glyph_at(m.voices[part_index(c.from.part)], c.from.index);
    const NoteGlyph* e = glyph_at(m.voices[part_index(c.to.part)], c.to.index);
    if (!s || !e) continue;
    out += fmt::format(
        "<line id=\"cross-{}\" class=\"cross-voice {}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" "
        "stroke=\"black\" stroke-dasharray=\"4 3\"/>\n",
        k, to_string(c.kind), slot_x(s->slot), note_y(c.from.part, *s), slot_x(e->slot),
        note_y(c.to.part, *e));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace scha
