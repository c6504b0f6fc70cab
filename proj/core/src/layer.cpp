#include "scha/layer.hpp"

#include <algorithm>
#include <tuple>

#include "scha/error.hpp"

namespace scha {
namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

/// Nearest survivor of `part` strictly left of `index`.
std::optional<std::size_t> nearest_left(const LayerState& s, Part part, std::size_t index) {
  for (std::size_t j = index; j-- > 0;) {
    if (s.is_survivor({part, j})) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> nearest_right(const LayerState& s, Part part, std::size_t index) {
  for (std::size_t j = index + 1; j < s.slot_count(); ++j) {
    if (s.is_survivor({part, j})) return j;
  }
  return std::nullopt;
}

/// Nearest survivor of `part` on either side (or at `index`), ties to the left.
std::optional<std::size_t> nearest_any(const LayerState& s, Part part, std::size_t index) {
  if (s.is_survivor({part, index})) return index;
  auto l = nearest_left(s, part, index);
  auto r = nearest_right(s, part, index);
  if (l && r) return distance(index, *l) <= distance(*r, index) ? l : r;
  return l ? l : r;
}

std::vector<std::size_t> survivor_slots(const LayerState& s, Part part) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.slot_count(); ++j) {
    if (s.is_survivor({part, j})) out.push_back(j);
  }
  return out;
}

}  // namespace

LayerState LayerState::initial(const Analysis& a) {
  LayerState s;
  s.slots_ = a.slot_count();
  for (Part p : kParts) {
    auto& col = s.depths_[part_index(p)];
    col.assign(s.slots_, std::nullopt);
    const auto& slots = a.voice(p).slots;
    for (std::size_t i = 0; i < std::min(slots.size(), s.slots_); ++i) {
      if (slots[i].is_pitch()) col[i] = slots[i].depth.value_or(0);
    }
  }
  return s;
}

std::optional<int> LayerState::depth(Part p, std::size_t index) const {
  const auto& col = depths_[part_index(p)];
  return index < col.size() ? col[index] : std::nullopt;
}

std::vector<NoteRef> LayerState::live_notes() const {
  std::vector<NoteRef> out;
  for (std::size_t i = 0; i < slots_; ++i) {
    for (Part p : kParts) {
      if (depths_[part_index(p)][i]) out.push_back({p, i});
    }
  }
  return out;
}

std::vector<NoteRef> LayerState::survivors() const {
  std::vector<NoteRef> out;
  for (std::size_t i = 0; i < slots_; ++i) {
    for (Part p : kParts) {
      const auto& d = depths_[part_index(p)][i];
      if (d && *d > 0) out.push_back({p, i});
    }
  }
  return out;
}

bool LayerState::has_survivor(Part p) const {
  const auto& col = depths_[part_index(p)];
  return std::any_of(col.begin(), col.end(), [](const auto& d) { return d && *d > 0; });
}

bool LayerState::has_live(Part p) const {
  const auto& col = depths_[part_index(p)];
  return std::any_of(col.begin(), col.end(), [](const auto& d) { return d.has_value(); });
}

bool LayerState::has_depth_zero() const {
  for (const auto& col : depths_) {
    if (std::any_of(col.begin(), col.end(), [](const auto& d) { return d && *d == 0; })) return true;
  }
  return false;
}

int LayerState::max_depth() const {
  int best = 0;
  for (const auto& col : depths_) {
    for (const auto& d : col) {
      if (d) best = std::max(best, *d);
    }
  }
  return best;
}

LayerState LayerState::next() const {
  LayerState s = *this;
  s.layer_ = layer_ + 1;
  for (auto& col : s.depths_) {
    for (auto& d : col) {
      if (!d) continue;
      if (*d == 0) d.reset();
      else --*d;
    }
  }
  return s;
}

std::vector<WeightedTarget> cluster_assignment(const LayerState& state, const NoteRef& note,
                                               const ClusterOptions& opts) {
  const auto d = state.depth(note);
  if (!d || *d != 0) {
    throw Error(ErrorCode::Argument, "not a live depth-0 note at layer " + std::to_string(state.layer()),
                to_string(note));
  }

  // Same voice, left first, then right.
  if (auto j = nearest_left(state, note.part, note.index)) return {{{note.part, *j}, 1.0}};
  if (auto j = nearest_right(state, note.part, note.index)) return {{{note.part, *j}, 1.0}};

  if (is_outer(note.part)) {
    const Part other = note.part == Part::Soprano ? Part::Bass : Part::Soprano;
    if (opts.lenient) {
      if (auto j = nearest_any(state, other, note.index)) return {{{other, *j}, 1.0}};
    }
    throw Error(ErrorCode::Infeasible,
                "outer voice has no surviving note at layer " + std::to_string(state.layer()),
                to_string(note));
  }

  // Inner voice without own survivors: split between soprano and bass.
  const auto sop = survivor_slots(state, Part::Soprano);
  const auto bass = survivor_slots(state, Part::Bass);
  if (sop.empty() || bass.empty()) {
    throw Error(ErrorCode::Infeasible,
                "inner-voice note needs surviving soprano and bass notes at layer " +
                    std::to_string(state.layer()),
                to_string(note));
  }

  const std::size_t i = note.index;
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::optional<Key> best;
  for (std::size_t j1 : sop) {
    for (std::size_t j2 : bass) {
      const bool opposite = (j1 <= i && j2 >= i) || (j1 >= i && j2 <= i);
      if (!opposite) continue;
      const std::size_t d1 = distance(i, j1), d2 = distance(i, j2);
      Key k{std::min(d1, d2), std::max(d1, d2), j1, j2};
      if (!best || k < *best) best = k;
    }
  }
  std::size_t j1 = 0, j2 = 0;
  if (best) {
    j1 = std::get<2>(*best);
    j2 = std::get<3>(*best);
  } else {
    // Every outer survivor lies on one side of the note.
    j1 = *nearest_any(state, Part::Soprano, i);
    j2 = *nearest_any(state, Part::Bass, i);
  }
  return {{{Part::Soprano, j1}, 0.5}, {{Part::Bass, j2}, 0.5}};
}

}  // namespace scha
