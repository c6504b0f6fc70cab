#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace scha {

/// A spelled pitch in scientific pitch notation (C4 = middle C).
struct PitchSpec {
  char letter = 'C';    // 'A'..'G'
  int accidental = 0;   // -2 (double flat) .. +2 (double sharp)
  int octave = 4;

  friend bool operator==(const PitchSpec&, const PitchSpec&) = default;
};

/// Semitone offset of a natural letter above C; throws E_PITCH for letters
/// outside A-G.
int letter_semitone(char letter);

/// Diatonic step index of a letter, C = 0 .. B = 6.
int letter_step(char letter);

/// 12 * (octave + 1) + letter semitone + accidental. Throws E_RANGE when the
/// result falls outside [0, 127].
int midi_number(const PitchSpec& p);

/// Absolute diatonic position, octave * 7 + letter step. Used for staff
/// placement, independent of accidentals.
int diatonic_position(const PitchSpec& p);

/// Parses tokens like "C4", "Bb3", "F#5", "Ebb2", "Gx4", "C-1".
/// Throws E_PITCH on malformed tokens and E_RANGE on out-of-range pitches.
PitchSpec parse_pitch(std::string_view token);

/// Canonical token: letter, then '#' or 'b' repeated |accidental| times, then
/// the octave.
std::string to_string(const PitchSpec& p);

}  // namespace scha
