#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"

namespace scha {

/// X (Y) Z: `middles` elaborate the motion from `start` to `end` at `level`.
struct Prolongation {
  int level = 1;
  std::optional<Part> voice;  // nullopt for mixed-voice custom records
  NoteRef start;
  std::vector<NoteRef> middles;
  NoteRef end;
  bool custom = false;

  friend bool operator==(const Prolongation&, const Prolongation&) = default;
};

using ProlongationSet = std::vector<Prolongation>;

/// Pairs of consecutive notes with depth >= level in each voice, with the
/// intervening lower notes as middles. Empty-middle pairs are included.
/// Throws E_LEVEL unless 1 <= level <= max depth.
std::vector<Prolongation> prolongations_at_level(const Analysis& a, int level);

/// Every level 1..max depth followed by the file's custom records.
ProlongationSet all_prolongations(const Analysis& a);

/// Drops empty-middle pairs and sorts by (level, voice, start index).
ProlongationSet nonempty_prolongations(const ProlongationSet& all);

/// One line per non-empty prolongation: `sop:0 ( sop:1 sop:2 ) sop:3`.
std::string export_kirlin_text(const Analysis& a);

nlohmann::json to_json(const Prolongation& p);
nlohmann::json prolongations_to_json(const ProlongationSet& set);

}  // namespace scha
