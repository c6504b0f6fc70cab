#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"

namespace scha {

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string code;      // V_NO_SURVIVOR, W_NO_URSATZ, ...
  std::string location;  // "soprano", "alto:4", "layer:2", or "-"
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool has_errors() const noexcept;
  bool has(std::string_view code) const noexcept;
  std::size_t error_count() const noexcept;
};

/// Checks structural invariants and that clustering is
/// feasible at every layer.
///
/// Errors: V_LENGTH, V_HOLD, V_DEPTH, V_EMPTY, V_CROSS, V_CUSTOM,
/// V_NO_SURVIVOR, V_INNER_NEEDS_OUTER.
/// Warnings: W_ALL_POSITIVE (one per identity layer), W_NO_URSATZ, and
/// W_NO_SURVIVOR in place of V_NO_SURVIVOR when `lenient` and the fallback
/// target exists.
ValidationReport validate(const Analysis& a, bool lenient = false);

/// "ERROR V_NO_SURVIVOR soprano message"
std::string format_finding(const Finding& f);

nlohmann::json to_json(const Finding& f);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace scha
