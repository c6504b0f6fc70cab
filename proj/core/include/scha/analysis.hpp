#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "scha/pitch.hpp"

namespace scha {

enum class Part { Soprano = 0, Alto = 1, Tenor = 2, Bass = 3 };

inline constexpr std::array<Part, 4> kParts{Part::Soprano, Part::Alto, Part::Tenor,
                                            Part::Bass};

constexpr std::size_t part_index(Part p) noexcept { return static_cast<std::size_t>(p); }
constexpr bool is_outer(Part p) noexcept { return p == Part::Soprano || p == Part::Bass; }

/// "soprano", "alto", "tenor", "bass" (file format keys).
std::string_view part_name(Part p) noexcept;
/// "sop", "alto", "ten", "bass" (labels, node ids, text export).
std::string_view part_short_name(Part p) noexcept;
/// Accepts either spelling.
std::optional<Part> parse_part(std::string_view name) noexcept;

/// A (part, slot) coordinate. Orders by slot first, then part, which is the
/// note ordering used by cluster matrices and graphs.
struct NoteRef {
  Part part = Part::Soprano;
  std::size_t index = 0;

  friend bool operator==(const NoteRef&, const NoteRef&) = default;
  friend std::strong_ordering operator<=>(const NoteRef& a, const NoteRef& b) {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return part_index(a.part) <=> part_index(b.part);
  }
};

/// "sop:3"
std::string to_string(const NoteRef& ref);

struct Rest {
  friend bool operator==(Rest, Rest) = default;
};
struct Hold {
  friend bool operator==(Hold, Hold) = default;
};

using SlotContent = std::variant<PitchSpec, Rest, Hold>;

struct NoteEvent {
  SlotContent content = Rest{};
  std::optional<int> depth;  // present iff content is a pitch
  bool ursatz = false;
  bool flagged = false;
  bool parenthesized = false;
  bool accidentalDisplayed = false;
  std::optional<std::string> harmony;

  bool is_pitch() const noexcept { return std::holds_alternative<PitchSpec>(content); }
  bool is_rest() const noexcept { return std::holds_alternative<Rest>(content); }
  bool is_hold() const noexcept { return std::holds_alternative<Hold>(content); }
  const PitchSpec& pitch() const { return std::get<PitchSpec>(content); }

  static NoteEvent note(PitchSpec p, int depth) {
    NoteEvent e;
    e.content = p;
    e.depth = depth;
    return e;
  }
  static NoteEvent rest() { return NoteEvent{}; }
  static NoteEvent hold() {
    NoteEvent e;
    e.content = Hold{};
    return e;
  }

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct Voice {
  Part part = Part::Soprano;
  std::vector<NoteEvent> slots;

  /// True when at least one slot holds a pitch.
  bool has_notes() const noexcept;
  /// Largest depth among pitch slots; nullopt for a voice without notes.
  std::optional<int> max_depth() const noexcept;

  friend bool operator==(const Voice&, const Voice&) = default;
};

enum class CrossVoiceKind { VoiceExchange, RelationLine };

std::string_view to_string(CrossVoiceKind kind) noexcept;
std::optional<CrossVoiceKind> parse_cross_voice_kind(std::string_view s) noexcept;

struct CrossVoiceSymbol {
  CrossVoiceKind kind = CrossVoiceKind::RelationLine;
  NoteRef from;
  NoteRef to;

  friend bool operator==(const CrossVoiceSymbol&, const CrossVoiceSymbol&) = default;
};

struct Meta {
  std::optional<std::string> analyst;
  std::optional<std::string> composer;
  std::optional<std::string> title;
  std::optional<std::string> subtitle;
  std::optional<std::string> description;

  friend bool operator==(const Meta&, const Meta&) = default;
};

enum class Mode { Major, Minor };

struct Key {
  std::string tonic = "C";
  Mode mode = Mode::Major;

  friend bool operator==(const Key&, const Key&) = default;
};

/// Maps verticality slots onto a metric grid. `offset` is the number of slots
/// before the first downbeat (a pickup); `slotsPerBeat` subdivides beats.
struct Meter {
  int beatsPerBar = 4;
  int beatUnit = 4;
  int offset = 0;
  int slotsPerBeat = 1;

  friend bool operator==(const Meter&, const Meter&) = default;
};

/// A hand-entered prolongation that the depth traversal does not produce.
struct CustomProlongation {
  int level = 1;
  NoteRef start;
  std::vector<NoteRef> middles;
  NoteRef end;

  friend bool operator==(const CustomProlongation&, const CustomProlongation&) = default;
};

/// One excerpt's full annotation. Voices are indexed by Part and always share
/// the same slot count.
struct Analysis {
  Meta meta;
  Key key;
  std::array<Voice, 4> voices{Voice{Part::Soprano, {}}, Voice{Part::Alto, {}},
                              Voice{Part::Tenor, {}}, Voice{Part::Bass, {}}};
  std::vector<CrossVoiceSymbol> crossVoice;
  std::optional<Meter> meter;
  std::vector<CustomProlongation> customProlongations;
  /// Unknown top-level fields, kept verbatim for round trips.
  nlohmann::json extra = nlohmann::json::object();

  Voice& voice(Part p) { return voices[part_index(p)]; }
  const Voice& voice(Part p) const { return voices[part_index(p)]; }
  const NoteEvent& at(const NoteRef& r) const { return voice(r.part).slots.at(r.index); }

  /// n_v, the shared slot count.
  std::size_t slot_count() const noexcept { return voices[0].slots.size(); }
  /// Maximum depth over all notes, 0 when there are none.
  int max_depth() const noexcept;
  /// Number of pitch slots over all voices (n_0).
  std::size_t note_count() const noexcept;
  /// All pitch slots in (slot, part) order.
  std::vector<NoteRef> notes() const;

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

}  // namespace scha
