#include "scha/clusters.hpp"

#include <fstream>
#include <map>

#include <fmt/format.h>

#include "scha/error.hpp"

namespace scha {

ClusterMatrix build_cluster_matrix(const LayerState& state, const ClusterOptions& opts) {
  ClusterMatrix m;
  m.rowLabels = state.live_notes();
  m.colLabels = state.survivors();

  std::map<NoteRef, Eigen::Index> column;
  for (std::size_t c = 0; c < m.colLabels.size(); ++c) {
    column.emplace(m.colLabels[c], static_cast<Eigen::Index>(c));
  }

  m.data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rowLabels.size()),
                                 static_cast<Eigen::Index>(m.colLabels.size()));
  for (std::size_t r = 0; r < m.rowLabels.size(); ++r) {
    const NoteRef& note = m.rowLabels[r];
    const auto row = static_cast<Eigen::Index>(r);
    if (state.is_survivor(note)) {
      m.data(row, column.at(note)) = 1.0;
      continue;
    }
    for (const auto& [target, weight] : cluster_assignment(state, note, opts)) {
      m.data(row, column.at(target)) += weight;
    }
  }
  return m;
}

ClusterStack cluster_stack(const Analysis& a, const ClusterOptions& opts) {
  ClusterStack stack;
  stack.n0 = a.note_count();
  const int layers = a.max_depth();
  LayerState state = LayerState::initial(a);
  for (int l = 0; l < layers; ++l) {
    stack.layers.push_back(build_cluster_matrix(state, opts));
    state = state.next();
  }
  return stack;
}

Eigen::MatrixXd compose(const ClusterStack& stack, std::size_t i, std::size_t j) {
  if (i >= j || j > stack.layers.size()) {
    throw Error(ErrorCode::Bounds, fmt::format("cannot compose layers {}..{} of a {}-layer stack", i,
                                               j, stack.layers.size()));
  }
  Eigen::MatrixXd out = stack.layers[i].data;
  for (std::size_t k = i + 1; k < j; ++k) out = out * stack.layers[k].data;
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  return fmt::format("{}", v);
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m, const std::vector<NoteRef>& rowLabels,
                              const std::vector<NoteRef>& colLabels) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    data.push_back(std::move(row));
  }
  nlohmann::json rows = nlohmann::json::array(), cols = nlohmann::json::array();
  for (const auto& l : rowLabels) rows.push_back(to_string(l));
  for (const auto& l : colLabels) cols.push_back(to_string(l));
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::move(data)},
          {"rowLabels", std::move(rows)},
          {"colLabels", std::move(cols)}};
}

nlohmann::json stack_to_json(const ClusterStack& stack) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : stack.layers) layers.push_back(matrix_to_json(l.data, l.rowLabels, l.colLabels));
  return {{"n0", stack.n0}, {"layers", std::move(layers)}};
}

void write_stack_csv(const ClusterStack& stack, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, ec.message(), dir.string());
  for (std::size_t k = 0; k < stack.layers.size(); ++k) {
    const auto path = dir / fmt::format("S{}.csv", k);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write file", path.string());
    out << matrix_to_csv(stack.layers[k].data);
  }
}

}  // namespace scha
