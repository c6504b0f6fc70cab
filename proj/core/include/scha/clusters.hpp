#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "scha/analysis.hpp"
#include "scha/layer.hpp"

namespace scha {

/// One reduction step S^(l): rows are the live notes before the step, columns
/// the survivors after it. Entries are 0, 0.5 or 1 and each row sums to 1.
struct ClusterMatrix {
  Eigen::MatrixXd data;
  std::vector<NoteRef> rowLabels;
  std::vector<NoteRef> colLabels;

  Eigen::Index rows() const noexcept { return data.rows(); }
  Eigen::Index cols() const noexcept { return data.cols(); }
};

struct ClusterStack {
  std::vector<ClusterMatrix> layers;
  std::size_t n0 = 0;  // total note count
};

ClusterMatrix build_cluster_matrix(const LayerState& state, const ClusterOptions& opts = {});

/// One matrix per depth level: build, drop depth-0 notes, decrement, repeat.
/// The stack has exactly max_depth() layers; layers without a depth-0 note are
/// identities.
ClusterStack cluster_stack(const Analysis& a, const ClusterOptions& opts = {});

/// Product of layers[i] .. layers[j-1]. Throws E_BOUNDS unless
/// 0 <= i < j <= layers.size().
Eigen::MatrixXd compose(const ClusterStack& stack, std::size_t i, std::size_t j);

/// Compact decimal rendering used by the exporters ("0", "0.5", "1").
std::string format_number(double v);

/// Comma separated rows, no header, newline terminated.
std::string matrix_to_csv(const Eigen::MatrixXd& m);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m, const std::vector<NoteRef>& rowLabels,
                              const std::vector<NoteRef>& colLabels);

/// {"layers": [{"rows", "cols", "data", "rowLabels", "colLabels"}, ...]}
nlohmann::json stack_to_json(const ClusterStack& stack);

/// Writes S0.csv, S1.csv, ... into `dir` (created if needed).
void write_stack_csv(const ClusterStack& stack, const std::filesystem::path& dir);

}  // namespace scha
