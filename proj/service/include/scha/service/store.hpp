#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scha/analysis.hpp"

namespace scha::service {

/// Hex SHA-256 of `bytes`.
std::string content_etag(std::string_view bytes);

struct StoredAnalysis {
  std::string id;
  std::string document;  // canonical JSON
  std::string etag;
};

/// A directory of canonical `<id>.scha.json` files. Writes to one id are
/// serialized and guarded by an etag compare-and-swap.
class AnalysisStore {
 public:
  explicit AnalysisStore(std::filesystem::path root);

  /// Ids are 1-128 chars of [A-Za-z0-9._-] and may not start with '.'.
  static bool valid_id(std::string_view id);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_for(std::string_view id) const;

  /// Sorted ids of every `*.scha.json` file in the root.
  std::vector<std::string> list_ids() const;

  /// Canonical document and etag, nullopt if absent. Throws scha::Error if the
  /// file exists but does not parse.
  std::optional<StoredAnalysis> get(std::string_view id) const;

  enum class PutStatus { Created, Updated, Conflict };
  struct PutResult {
    PutStatus status = PutStatus::Conflict;
    std::string etag;  // new etag on success, current etag on conflict
  };

  /// Creating requires `ifMatch` to be absent; replacing requires it to equal
  /// the current etag (or "*"). Anything else is a conflict.
  PutResult put(std::string_view id, const Analysis& a, const std::optional<std::string>& ifMatch);

 private:
  std::mutex& lock_for(std::string_view id);

  std::filesystem::path root_;
  std::mutex locks_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>, std::less<>> locks_;
};

}  // namespace scha::service
