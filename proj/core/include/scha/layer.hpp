#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "scha/analysis.hpp"

namespace scha {

struct ClusterOptions {
  /// Enables the outer-voice fallback: an outer voice with no surviving note
  /// at a layer clusters into the nearest survivor of the other outer voice
  /// (ties go left).
  bool lenient = false;
};

/// Live depths of every note at one clustering layer. A note is live at layer
/// l when its original depth is >= l; its current depth is (depth - l).
class LayerState {
 public:
  static LayerState initial(const Analysis& a);

  int layer() const noexcept { return layer_; }
  std::size_t slot_count() const noexcept { return slots_; }

  /// Current depth of a live note, nullopt when (part, index) is not live.
  std::optional<int> depth(Part p, std::size_t index) const;
  std::optional<int> depth(const NoteRef& r) const { return depth(r.part, r.index); }
  bool is_live(const NoteRef& r) const { return depth(r).has_value(); }
  bool is_survivor(const NoteRef& r) const {
    auto d = depth(r);
    return d && *d > 0;
  }

  /// Live notes in (slot, part) order: the row labels of this layer's matrix.
  std::vector<NoteRef> live_notes() const;
  /// Live notes with positive depth, same order: the column labels.
  std::vector<NoteRef> survivors() const;
  bool has_survivor(Part p) const;
  bool has_live(Part p) const;
  bool has_depth_zero() const;
  /// Largest current depth, 0 when nothing is live.
  int max_depth() const;

  /// Drops depth-0 notes and decrements the rest.
  LayerState next() const;

 private:
  std::array<std::vector<std::optional<int>>, 4> depths_;
  std::size_t slots_ = 0;
  int layer_ = 0;
};

struct WeightedTarget {
  NoteRef target;
  double weight = 1.0;

  friend bool operator==(const WeightedTarget&, const WeightedTarget&) = default;
};

/// Where a depth-0 live note goes at this layer:
///   1. nearest survivor in its own part to the left, weight 1;
///   2. else nearest survivor in its own part to the right, weight 1;
///   3. else (inner part) a soprano and a bass survivor on opposite sides of
///      the note (or at it), weight 0.5 each, minimising the nearer distance,
///      then the farther, then preferring smaller indices. If no opposite-side
///      pair exists, the nearest soprano and nearest bass survivors are used.
/// Outer parts that reach branch 3 use the lenient fallback or throw.
///
/// Throws E_ARGUMENT if the note is not a live depth-0 note and E_INFEASIBLE
/// when no target exists.
std::vector<WeightedTarget> cluster_assignment(const LayerState& state, const NoteRef& note,
                                               const ClusterOptions& opts = {});

}  // namespace scha
