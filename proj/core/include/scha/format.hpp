#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"

namespace scha {

/// Parses a `.scha.json` document. Index sets (ursatz, flags, parens,
/// accidentals) become per-slot booleans; unknown top-level fields are kept in
/// Analysis::extra.
///
/// Errors: E_SYNTAX, E_LENGTH, E_PITCH, E_INDEX, E_HOLD, E_SCHEMA, E_RANGE.
Analysis parse_analysis(std::string_view text);
Analysis analysis_from_json(const nlohmann::json& doc);

/// Canonical document: sorted keys, ascending index sets, absent optionals
/// omitted, two-space indentation, trailing newline.
std::string serialize_analysis(const Analysis& a);
nlohmann::json analysis_to_json(const Analysis& a);

/// Reads and parses a file; E_IO when it cannot be read.
Analysis load_analysis(const std::filesystem::path& path);

}  // namespace scha
