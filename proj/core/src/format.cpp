#include "scha/format.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "scha/error.hpp"

namespace scha {
namespace {

using nlohmann::json;

constexpr std::string_view kRestToken = "R";
constexpr std::string_view kHoldToken = "_";

const std::set<std::string, std::less<>> kKnownTopLevel{"meta",  "key",   "voices",
                                                        "crossVoice", "meter", "prolongations"};

[[noreturn]] void schema_error(const std::string& what, const std::string& where) {
  throw Error(ErrorCode::Schema, what, where);
}

const json* find(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error("expected a string", where);
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, std::string_view key,
                                           const std::string& where) {
  const json* v = find(obj, key);
  if (!v || v->is_null()) return std::nullopt;
  return require_string(*v, where + "." + std::string(key));
}

long long require_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_error("expected an integer", where);
  return v.get<long long>();
}

std::size_t require_index(const json& v, std::size_t nv, const std::string& where) {
  const long long i = require_integer(v, where);
  if (i < 0 || static_cast<std::size_t>(i) >= nv) {
    throw Error(ErrorCode::Index,
                "index " + std::to_string(i) + " outside [0, " + std::to_string(nv) + ")", where);
  }
  return static_cast<std::size_t>(i);
}

NoteRef parse_ref(const json& v, std::size_t nv, const std::string& where) {
  if (!v.is_object()) schema_error("expected {part, index}", where);
  const json* part = find(v, "part");
  const json* index = find(v, "index");
  if (!part || !index) schema_error("expected {part, index}", where);
  auto p = parse_part(require_string(*part, where + ".part"));
  if (!p) schema_error("unknown part", where + ".part");
  return {*p, require_index(*index, nv, where + ".index")};
}

json ref_to_json(const NoteRef& r) {
  return json{{"part", part_name(r.part)}, {"index", r.index}};
}

struct RawVoice {
  std::vector<std::string> pitches;
  const json* doc = nullptr;
};

RawVoice read_pitches(const json& voice, const std::string& where) {
  if (!voice.is_object()) schema_error("voice must be an object", where);
  RawVoice raw;
  raw.doc = &voice;
  const json* pitches = find(voice, "pitches");
  if (!pitches || !pitches->is_array()) schema_error("missing \"pitches\" array", where);
  for (std::size_t i = 0; i < pitches->size(); ++i) {
    raw.pitches.push_back(require_string((*pitches)[i], where + ".pitches[" + std::to_string(i) + "]"));
  }
  return raw;
}

void read_index_set(const json& voice, std::string_view key, std::size_t nv,
                    const std::string& where, std::vector<NoteEvent>& slots,
                    bool NoteEvent::*flag) {
  const json* set = find(voice, key);
  if (!set || set->is_null()) return;
  const std::string loc = where + "." + std::string(key);
  if (!set->is_array()) schema_error("expected an index array", loc);
  for (const auto& v : *set) slots[require_index(v, nv, loc)].*flag = true;
}

Voice read_voice(Part part, const RawVoice& raw, std::size_t nv) {
  const std::string where = "voices." + std::string(part_name(part));
  const json& doc = *raw.doc;
  Voice voice{part, {}};
  voice.slots.resize(nv);

  const json* depths = find(doc, "depths");
  if (depths && !depths->is_null() && !depths->is_array()) schema_error("expected an array", where + ".depths");
  const std::size_t ndepths = depths && depths->is_array() ? depths->size() : 0;
  if (ndepths != nv) {
    throw Error(ErrorCode::Length,
                "pitches has " + std::to_string(nv) + " entries but depths has " +
                    std::to_string(ndepths),
                where);
  }

  for (std::size_t i = 0; i < nv; ++i) {
    const std::string& token = raw.pitches[i];
    const std::string slot_loc = std::string(part_name(part)) + ":" + std::to_string(i);
    NoteEvent& e = voice.slots[i];
    if (token == kRestToken) {
      e.content = Rest{};
    } else if (token == kHoldToken) {
      if (i == 0 || voice.slots[i - 1].is_rest()) {
        throw Error(ErrorCode::Hold, i == 0 ? "hold in first slot" : "hold after a rest", slot_loc);
      }
      e.content = Hold{};
    } else {
      try {
        e.content = parse_pitch(token);
      } catch (Error& err) {
        throw Error(err.code(), err.message(), slot_loc);
      }
    }

    const json& d = (*depths)[i];
    if (e.is_pitch()) {
      if (d.is_null()) schema_error("note has no depth", slot_loc);
      const long long depth = require_integer(d, slot_loc);
      if (depth < 0) schema_error("negative depth", slot_loc);
      e.depth = static_cast<int>(depth);
    } else if (!d.is_null()) {
      schema_error("rest or hold slot must have a null depth", slot_loc);
    }
  }

  read_index_set(doc, "ursatz", nv, where, voice.slots, &NoteEvent::ursatz);
  read_index_set(doc, "flags", nv, where, voice.slots, &NoteEvent::flagged);
  read_index_set(doc, "parens", nv, where, voice.slots, &NoteEvent::parenthesized);
  read_index_set(doc, "accidentals", nv, where, voice.slots, &NoteEvent::accidentalDisplayed);

  if (const json* harmony = find(doc, "harmony"); harmony && !harmony->is_null()) {
    const std::string loc = where + ".harmony";
    if (!harmony->is_object()) schema_error("expected an object", loc);
    for (const auto& [k, label] : harmony->items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        const long long v = std::stoll(k, &used);
        if (used != k.size() || v < 0) throw std::invalid_argument(k);
        idx = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Index, "harmony key \"" + k + "\" is not an index", loc);
      }
      if (idx >= nv) {
        throw Error(ErrorCode::Index,
                    "index " + k + " outside [0, " + std::to_string(nv) + ")", loc);
      }
      voice.slots[idx].harmony = require_string(label, loc + "." + k);
    }
  }
  return voice;
}

int positive_int(const json& obj, std::string_view key, const std::string& where, int fallback,
                 bool allow_zero = false) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  const long long x = require_integer(*v, where + "." + std::string(key));
  if (x < (allow_zero ? 0 : 1)) schema_error("out of range", where + "." + std::string(key));
  return static_cast<int>(x);
}

json voice_to_json(const Voice& v) {
  json pitches = json::array();
  json depths = json::array();
  json ursatz = json::array(), flags = json::array(), parens = json::array(),
       accidentals = json::array();
  json harmony = json::object();
  for (std::size_t i = 0; i < v.slots.size(); ++i) {
    const NoteEvent& e = v.slots[i];
    if (e.is_pitch()) {
      pitches.push_back(to_string(e.pitch()));
      depths.push_back(e.depth.value_or(0));
    } else {
      pitches.push_back(e.is_rest() ? kRestToken : kHoldToken);
      depths.push_back(nullptr);
    }
    if (e.ursatz) ursatz.push_back(i);
    if (e.flagged) flags.push_back(i);
    if (e.parenthesized) parens.push_back(i);
    if (e.accidentalDisplayed) accidentals.push_back(i);
    if (e.harmony) harmony[std::to_string(i)] = *e.harmony;
  }
  return json{{"pitches", std::move(pitches)}, {"depths", std::move(depths)},
              {"ursatz", std::move(ursatz)},   {"flags", std::move(flags)},
              {"parens", std::move(parens)},   {"accidentals", std::move(accidentals)},
              {"harmony", std::move(harmony)}};
}

}  // namespace

Analysis analysis_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("document must be a JSON object", "$");
  Analysis a;

  if (const json* meta = find(doc, "meta"); meta && !meta->is_null()) {
    if (!meta->is_object()) schema_error("expected an object", "meta");
    a.meta.analyst = optional_string(*meta, "analyst", "meta");
    a.meta.composer = optional_string(*meta, "composer", "meta");
    a.meta.title = optional_string(*meta, "title", "meta");
    a.meta.subtitle = optional_string(*meta, "subtitle", "meta");
    a.meta.description = optional_string(*meta, "description", "meta");
  }

  if (const json* key = find(doc, "key"); key && !key->is_null()) {
    if (!key->is_object()) schema_error("expected an object", "key");
    if (auto tonic = optional_string(*key, "tonic", "key")) a.key.tonic = *tonic;
    if (auto mode = optional_string(*key, "mode", "key")) {
      if (*mode == "major") a.key.mode = Mode::Major;
      else if (*mode == "minor") a.key.mode = Mode::Minor;
      else schema_error("mode must be \"major\" or \"minor\"", "key.mode");
    }
  }

  const json* voices = find(doc, "voices");
  if (!voices || !voices->is_object()) schema_error("missing \"voices\" object", "voices");
  for (const auto& [k, _] : voices->items()) {
    if (!parse_part(k) || k != part_name(*parse_part(k))) schema_error("unknown voice \"" + k + "\"", "voices");
  }

  std::array<std::optional<RawVoice>, 4> raw;
  std::optional<std::size_t> nv;
  for (Part p : kParts) {
    const json* v = find(*voices, part_name(p));
    if (!v) continue;
    const std::string where = "voices." + std::string(part_name(p));
    raw[part_index(p)] = read_pitches(*v, where);
    const std::size_t len = raw[part_index(p)]->pitches.size();
    if (nv && *nv != len) {
      throw Error(ErrorCode::Length,
                  "voice has " + std::to_string(len) + " slots, expected " + std::to_string(*nv),
                  where);
    }
    nv = len;
  }
  if (!nv || *nv == 0) throw Error(ErrorCode::Length, "analysis has no slots", "voices");

  for (Part p : kParts) {
    if (raw[part_index(p)]) {
      a.voice(p) = read_voice(p, *raw[part_index(p)], *nv);
    } else {
      a.voice(p) = Voice{p, std::vector<NoteEvent>(*nv)};
    }
  }

  if (const json* cross = find(doc, "crossVoice"); cross && !cross->is_null()) {
    if (!cross->is_array()) schema_error("expected an array", "crossVoice");
    for (std::size_t i = 0; i < cross->size(); ++i) {
      const std::string where = "crossVoice[" + std::to_string(i) + "]";
      const json& c = (*cross)[i];
      if (!c.is_object()) schema_error("expected an object", where);
      const json* kind = find(c, "kind");
      const json* from = find(c, "from");
      const json* to = find(c, "to");
      if (!kind || !from || !to) schema_error("expected {kind, from, to}", where);
      auto k = parse_cross_voice_kind(require_string(*kind, where + ".kind"));
      if (!k) schema_error("unknown cross-voice kind", where + ".kind");
      a.crossVoice.push_back({*k, parse_ref(*from, *nv, where + ".from"), parse_ref(*to, *nv, where + ".to")});
    }
  }

  if (const json* meter = find(doc, "meter"); meter && !meter->is_null()) {
    if (!meter->is_object()) schema_error("expected an object", "meter");
    Meter m;
    m.beatsPerBar = positive_int(*meter, "beatsPerBar", "meter", m.beatsPerBar);
    m.beatUnit = positive_int(*meter, "beatUnit", "meter", m.beatUnit);
    m.offset = positive_int(*meter, "offset", "meter", 0, true);
    m.slotsPerBeat = positive_int(*meter, "slotsPerBeat", "meter", 1);
    a.meter = m;
  }

  if (const json* pro = find(doc, "prolongations"); pro && !pro->is_null()) {
    if (!pro->is_array()) schema_error("expected an array", "prolongations");
    for (std::size_t i = 0; i < pro->size(); ++i) {
      const std::string where = "prolongations[" + std::to_string(i) + "]";
      const json& p = (*pro)[i];
      if (!p.is_object()) schema_error("expected an object", where);
      const json* start = find(p, "start");
      const json* end = find(p, "end");
      if (!start || !end) schema_error("expected {level, start, middles, end}", where);
      CustomProlongation c;
      c.level = positive_int(p, "level", where, 1);
      c.start = parse_ref(*start, *nv, where + ".start");
      c.end = parse_ref(*end, *nv, where + ".end");
      if (const json* mids = find(p, "middles"); mids && !mids->is_null()) {
        if (!mids->is_array()) schema_error("expected an array", where + ".middles");
        for (std::size_t m = 0; m < mids->size(); ++m) {
          c.middles.push_back(parse_ref((*mids)[m], *nv, where + ".middles[" + std::to_string(m) + "]"));
        }
      }
      a.customProlongations.push_back(std::move(c));
    }
  }

  for (const auto& [k, v] : doc.items()) {
    if (!kKnownTopLevel.contains(k)) a.extra[k] = v;
  }
  return a;
}

Analysis parse_analysis(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Syntax, e.what(), "byte " + std::to_string(e.byte));
  }
  return analysis_from_json(doc);
}

json analysis_to_json(const Analysis& a) {
  json doc = a.extra.is_object() ? a.extra : json::object();

  json meta = json::object();
  auto put = [&](std::string_view k, const std::optional<std::string>& v) {
    if (v) meta[std::string(k)] = *v;
  };
  put("analyst", a.meta.analyst);
  put("composer", a.meta.composer);
  put("title", a.meta.title);
  put("subtitle", a.meta.subtitle);
  put("description", a.meta.description);
  doc["meta"] = std::move(meta);

  doc["key"] = json{{"tonic", a.key.tonic}, {"mode", a.key.mode == Mode::Major ? "major" : "minor"}};

  json voices = json::object();
  for (Part p : kParts) voices[std::string(part_name(p))] = voice_to_json(a.voice(p));
  doc["voices"] = std::move(voices);

  json cross = json::array();
  for (const auto& c : a.crossVoice) {
    cross.push_back(json{{"kind", to_string(c.kind)}, {"from", ref_to_json(c.from)}, {"to", ref_to_json(c.to)}});
  }
  doc["crossVoice"] = std::move(cross);

  if (a.meter) {
    doc["meter"] = json{{"beatsPerBar", a.meter->beatsPerBar},
                        {"beatUnit", a.meter->beatUnit},
                        {"offset", a.meter->offset},
                        {"slotsPerBeat", a.meter->slotsPerBeat}};
  }

  if (!a.customProlongations.empty()) {
    json pro = json::array();
    for (const auto& c : a.customProlongations) {
      json mids = json::array();
      for (const auto& m : c.middles) mids.push_back(ref_to_json(m));
      pro.push_back(json{{"level", c.level},
                         {"start", ref_to_json(c.start)},
                         {"middles", std::move(mids)},
                         {"end", ref_to_json(c.end)}});
    }
    doc["prolongations"] = std::move(pro);
  }
  return doc;
}

std::string serialize_analysis(const Analysis& a) {
  return analysis_to_json(a).dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

Analysis load_analysis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_analysis(buf.str());
}

}  // namespace scha
