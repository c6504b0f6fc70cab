#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scha {

enum class ErrorCode {
  Syntax,      // E_SYNTAX: malformed JSON
  Length,      // E_LENGTH: voice arrays of unequal length
  Pitch,       // E_PITCH: unparseable pitch token
  Index,       // E_INDEX: index-set entry out of range
  Hold,        // E_HOLD: hold in first slot or after a rest
  Schema,      // E_SCHEMA: wrong JSON shape or type
  Range,       // E_RANGE: MIDI number outside [0, 127]
  Level,       // E_LEVEL: prolongation level out of range
  Infeasible,  // E_INFEASIBLE: no cluster target exists
  Bounds,      // E_BOUNDS: bad layer indices for compose
  Feature,     // E_FEATURE: unknown feature column
  Meter,       // E_METER: metric strength without a meter
  Voice,       // E_VOICE: inner voice where an outer one is required
  Argument,    // E_ARGUMENT: precondition violated by caller
  Io,          // E_IO: file system failure
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a stable error code and an optional location such as
/// "soprano:3" or "voices.alto.depths".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string location = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string location_;
  std::string message_;
};

}  // namespace scha
