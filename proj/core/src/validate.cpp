#include "scha/validate.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "scha/error.hpp"
#include "scha/layer.hpp"

namespace scha {
namespace {

class Collector {
 public:
  explicit Collector(ValidationReport& r) : r_(r) {}

  void error(std::string code, std::string location, std::string message) {
    r_.findings.push_back({Severity::Error, std::move(code), std::move(location), std::move(message)});
  }
  void warning(std::string code, std::string location, std::string message) {
    r_.findings.push_back({Severity::Warning, std::move(code), std::move(location), std::move(message)});
  }

 private:
  ValidationReport& r_;
};

std::string slot_location(Part p, std::size_t i) {
  return std::string(part_name(p)) + ":" + std::to_string(i);
}

bool is_pitch_ref(const Analysis& a, const NoteRef& r) {
  const auto& slots = a.voice(r.part).slots;
  return r.index < slots.size() && slots[r.index].is_pitch();
}

/// Lengths, holds and depth presence. Returns false if the voices are not
/// aligned, which makes the layer checks meaningless.
bool check_structure(const Analysis& a, Collector& out) {
  const std::size_t nv = a.slot_count();
  bool aligned = nv > 0;
  if (nv == 0) out.error("V_LENGTH", "voices", "analysis has no slots");
  for (Part p : kParts) {
    const auto& v = a.voice(p);
    if (v.part != p) out.error("V_LENGTH", std::string(part_name(p)), "voice stored under the wrong part");
    if (v.slots.size() != nv) {
      out.error("V_LENGTH", std::string(part_name(p)),
                "voice has " + std::to_string(v.slots.size()) + " slots, expected " + std::to_string(nv));
      aligned = false;
    }
    for (std::size_t i = 0; i < v.slots.size(); ++i) {
      const NoteEvent& e = v.slots[i];
      if (e.is_hold() && (i == 0 || v.slots[i - 1].is_rest())) {
        out.error("V_HOLD", slot_location(p, i), i == 0 ? "hold in first slot" : "hold after a rest");
      }
      if (e.is_pitch() && (!e.depth || *e.depth < 0)) {
        out.error("V_DEPTH", slot_location(p, i), "note needs a non-negative depth");
      }
      if (!e.is_pitch() && e.depth) {
        out.error("V_DEPTH", slot_location(p, i), "rest or hold carries a depth");
      }
    }
  }
  return aligned;
}

void check_references(const Analysis& a, Collector& out) {
  for (std::size_t k = 0; k < a.crossVoice.size(); ++k) {
    const auto& c = a.crossVoice[k];
    if (!is_pitch_ref(a, c.from) || !is_pitch_ref(a, c.to)) {
      out.error("V_CROSS", "crossVoice[" + std::to_string(k) + "]", "endpoints must be notes");
    }
  }
  for (std::size_t k = 0; k < a.customProlongations.size(); ++k) {
    const auto& c = a.customProlongations[k];
    const std::string loc = "prolongations[" + std::to_string(k) + "]";
    bool ok = is_pitch_ref(a, c.start) && is_pitch_ref(a, c.end) && c.start.index < c.end.index;
    for (const auto& m : c.middles) {
      ok = ok && is_pitch_ref(a, m) && c.start.index < m.index && m.index < c.end.index;
    }
    if (!ok) out.error("V_CUSTOM", loc, "endpoints and middles must be notes ordered start < middles < end");
  }
}

/// Runs the layer-by-layer reduction and reports every (voice, layer) whose
/// depth-0 notes have nowhere to go.
void check_layers(const Analysis& a, bool lenient, Collector& out) {
  const int max_depth = a.max_depth();
  const int layers = std::max(max_depth, 1);
  std::set<std::pair<Part, int>> reported;

  LayerState state = LayerState::initial(a);
  for (int l = 0; l < layers; ++l) {
    if (max_depth > 0 && !state.has_depth_zero()) {
      out.warning("W_ALL_POSITIVE", "layer:" + std::to_string(l),
                  "no depth-0 note at this layer; its clustering matrix is an identity");
    }
    for (const NoteRef& n : state.live_notes()) {
      if (*state.depth(n) != 0 || reported.contains({n.part, l})) continue;
      try {
        cluster_assignment(state, n, {});
        continue;
      } catch (const Error&) {
      }
      reported.insert({n.part, l});
      const std::string loc = std::string(part_name(n.part));
      const std::string at = " at layer " + std::to_string(l);
      if (is_outer(n.part)) {
        bool fallback = max_depth == 0;
        if (!fallback && lenient) {
          try {
            cluster_assignment(state, n, {.lenient = true});
            fallback = true;
          } catch (const Error&) {
          }
        }
        const std::string msg = "outer voice has notes but no note of higher depth" + at;
        if (lenient && fallback) {
          out.warning("W_NO_SURVIVOR", loc, msg + "; clustered into the other outer voice");
        } else {
          out.error("V_NO_SURVIVOR", loc, msg);
        }
      } else if (lenient && max_depth == 0) {
        // No layers get built, so nothing actually fails.
        out.warning("W_INNER_NEEDS_OUTER", loc,
                    "inner voice needs surviving soprano and bass notes" + at);
      } else {
        out.error("V_INNER_NEEDS_OUTER", loc,
                  "inner voice needs surviving soprano and bass notes" + at);
      }
    }
    state = state.next();
  }
}

}  // namespace

bool ValidationReport::has_errors() const noexcept { return error_count() > 0; }

bool ValidationReport::has(std::string_view code) const noexcept {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

ValidationReport validate(const Analysis& a, bool lenient) {
  ValidationReport report;
  Collector out(report);
  if (!check_structure(a, out)) return report;

  if (!a.voice(Part::Soprano).has_notes() && !a.voice(Part::Bass).has_notes()) {
    out.error("V_EMPTY", "-", "neither soprano nor bass has a note");
  }
  check_references(a, out);
  if (report.has_errors()) return report;

  check_layers(a, lenient, out);

  const bool any_ursatz = std::any_of(a.voices.begin(), a.voices.end(), [](const Voice& v) {
    return std::any_of(v.slots.begin(), v.slots.end(), [](const NoteEvent& e) { return e.ursatz; });
  });
  if (!any_ursatz) out.warning("W_NO_URSATZ", "-", "no note is marked as part of the Ursatz");
  return report;
}

std::string format_finding(const Finding& f) {
  return std::string(f.severity == Severity::Error ? "ERROR" : "WARNING") + " " + f.code + " " +
         (f.location.empty() ? "-" : f.location) + " " + f.message;
}

nlohmann::json to_json(const Finding& f) {
  return {{"severity", f.severity == Severity::Error ? "error" : "warning"},
          {"code", f.code},
          {"location", f.location},
          {"message", f.message}};
}

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : r.findings) findings.push_back(to_json(f));
  return {{"ok", !r.has_errors()}, {"findings", std::move(findings)}};
}

}  // namespace scha
