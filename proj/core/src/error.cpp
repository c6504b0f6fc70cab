#include "scha/error.hpp"

#include <utility>

namespace scha {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "E_SYNTAX";
    case ErrorCode::Length: return "E_LENGTH";
    case ErrorCode::Pitch: return "E_PITCH";
    case ErrorCode::Index: return "E_INDEX";
    case ErrorCode::Hold: return "E_HOLD";
    case ErrorCode::Schema: return "E_SCHEMA";
    case ErrorCode::Range: return "E_RANGE";
    case ErrorCode::Level: return "E_LEVEL";
    case ErrorCode::Infeasible: return "E_INFEASIBLE";
    case ErrorCode::Bounds: return "E_BOUNDS";
    case ErrorCode::Feature: return "E_FEATURE";
    case ErrorCode::Meter: return "E_METER";
    case ErrorCode::Voice: return "E_VOICE";
    case ErrorCode::Argument: return "E_ARGUMENT";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, std::string message, std::string location)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      location_(std::move(location)),
      message_(std::move(message)) {}

}  // namespace scha
