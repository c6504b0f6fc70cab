#include "scha/analysis.hpp"

#include <algorithm>

namespace scha {

std::string_view part_name(Part p) noexcept {
  switch (p) {
    case Part::Soprano: return "soprano";
    case Part::Alto: return "alto";
    case Part::Tenor: return "tenor";
    case Part::Bass: return "bass";
  }
  return "?";
}

std::string_view part_short_name(Part p) noexcept {
  switch (p) {
    case Part::Soprano: return "sop";
    case Part::Alto: return "alto";
    case Part::Tenor: return "ten";
    case Part::Bass: return "bass";
  }
  return "?";
}

std::optional<Part> parse_part(std::string_view name) noexcept {
  for (Part p : kParts) {
    if (name == part_name(p) || name == part_short_name(p)) return p;
  }
  return std::nullopt;
}

std::string to_string(const NoteRef& ref) {
  return std::string(part_short_name(ref.part)) + ":" + std::to_string(ref.index);
}

std::string_view to_string(CrossVoiceKind kind) noexcept {
  return kind == CrossVoiceKind::VoiceExchange ? "voice-exchange" : "relation-line";
}

std::optional<CrossVoiceKind> parse_cross_voice_kind(std::string_view s) noexcept {
  if (s == "voice-exchange") return CrossVoiceKind::VoiceExchange;
  if (s == "relation-line") return CrossVoiceKind::RelationLine;
  return std::nullopt;
}

bool Voice::has_notes() const noexcept {
  return std::any_of(slots.begin(), slots.end(), [](const NoteEvent& e) { return e.is_pitch(); });
}

std::optional<int> Voice::max_depth() const noexcept {
  std::optional<int> best;
  for (const auto& e : slots) {
    if (e.is_pitch() && e.depth && (!best || *e.depth > *best)) best = *e.depth;
  }
  return best;
}

int Analysis::max_depth() const noexcept {
  int best = 0;
  for (const auto& v : voices) best = std::max(best, v.max_depth().value_or(0));
  return best;
}

std::size_t Analysis::note_count() const noexcept {
  std::size_t n = 0;
  for (const auto& v : voices) {
    n += static_cast<std::size_t>(
        std::count_if(v.slots.begin(), v.slots.end(), [](const NoteEvent& e) { return e.is_pitch(); }));
  }
  return n;
}

std::vector<NoteRef> Analysis::notes() const {
  std::vector<NoteRef> out;
  for (std::size_t i = 0; i < slot_count(); ++i) {
    for (Part p : kParts) {
      const auto& slots = voice(p).slots;
      if (i < slots.size() && slots[i].is_pitch()) out.push_back({p, i});
    }
  }
  return out;
}

}  // namespace scha
