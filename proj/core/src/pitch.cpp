#include "scha/pitch.hpp"

#include <charconv>

#include "scha/error.hpp"

namespace scha {

int letter_semitone(char letter) {
  switch (letter) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default: break;
  }
  throw Error(ErrorCode::Pitch, std::string("invalid pitch letter '") + letter + "'");
}

int letter_step(char letter) {
  switch (letter) {
    case 'C': return 0;
    case 'D': return 1;
    case 'E': return 2;
    case 'F': return 3;
    case 'G': return 4;
    case 'A': return 5;
    case 'B': return 6;
    default: break;
  }
  throw Error(ErrorCode::Pitch, std::string("invalid pitch letter '") + letter + "'");
}

int midi_number(const PitchSpec& p) {
  const int midi = 12 * (p.octave + 1) + letter_semitone(p.letter) + p.accidental;
  if (midi < 0 || midi > 127) {
    throw Error(ErrorCode::Range, to_string(p) + " is outside MIDI range 0-127");
  }
  return midi;
}

int diatonic_position(const PitchSpec& p) { return p.octave * 7 + letter_step(p.letter); }

PitchSpec parse_pitch(std::string_view token) {
  auto fail = [&] {
    return Error(ErrorCode::Pitch, "unparseable pitch token \"" + std::string(token) + "\"");
  };
  if (token.empty()) throw fail();

  PitchSpec p;
  p.letter = token.front();
  if (p.letter < 'A' || p.letter > 'G') throw fail();

  std::size_t pos = 1;
  int acc = 0;
  while (pos < token.size() && (token[pos] == '#' || token[pos] == 'b' || token[pos] == 'x')) {
    const char c = token[pos++];
    if (c == '#') {
      if (acc < 0) throw fail();
      acc += 1;
    } else if (c == 'x') {
      if (acc < 0) throw fail();
      acc += 2;
    } else {
      if (acc > 0) throw fail();
      acc -= 1;
    }
  }
  if (acc < -2 || acc > 2) throw fail();
  p.accidental = acc;

  const std::string_view octave = token.substr(pos);
  if (octave.empty()) throw fail();
  auto [end, ec] = std::from_chars(octave.data(), octave.data() + octave.size(), p.octave);
  if (ec != std::errc{} || end != octave.data() + octave.size()) throw fail();

  midi_number(p);  // range check
  return p;
}

std::string to_string(const PitchSpec& p) {
  std::string s(1, p.letter);
  s.append(static_cast<std::size_t>(p.accidental < 0 ? -p.accidental : p.accidental),
           p.accidental < 0 ? 'b' : '#');
  s += std::to_string(p.octave);
  return s;
}

}  // namespace scha
