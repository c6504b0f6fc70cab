#include "scha/service/store.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "scha/error.hpp"
#include "scha/format.hpp"

namespace scha::service {
namespace {

constexpr std::string_view kSuffix = ".scha.json";

std::string unquote(std::string s) {
  if (s.starts_with("W/")) s.erase(0, 2);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string content_etag(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

AnalysisStore::AnalysisStore(std::filesystem::path root) : root_(std::move(root)) {
  if (!std::filesystem::is_directory(root_)) {
    throw Error(ErrorCode::Io, "not a directory", root_.string());
  }
}

bool AnalysisStore::valid_id(std::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
           c == '_' || c == '-';
  });
}

std::filesystem::path AnalysisStore::path_for(std::string_view id) const {
  return root_ / (std::string(id) + std::string(kSuffix));
}

std::vector<std::string> AnalysisStore::list_ids() const {
  std::vector<std::string> ids;
  for (const auto& entry : std::filesystem::directory_iterator(root_)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() <= kSuffix.size() || !name.ends_with(kSuffix)) continue;
    std::string id = name.substr(0, name.size() - kSuffix.size());
    if (valid_id(id)) ids.push_back(std::move(id));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::optional<StoredAnalysis> AnalysisStore::get(std::string_view id) const {
  if (!valid_id(id)) return std::nullopt;
  auto bytes = read_file(path_for(id));
  if (!bytes) return std::nullopt;
  std::string canonical = serialize_analysis(parse_analysis(*bytes));
  std::string etag = content_etag(canonical);
  return StoredAnalysis{std::string(id), std::move(canonical), std::move(etag)};
}

std::mutex& AnalysisStore::lock_for(std::string_view id) {
  std::lock_guard guard(locks_guard_);
  auto it = locks_.find(id);
  if (it == locks_.end()) it = locks_.emplace(std::string(id), std::make_unique<std::mutex>()).first;
  return *it->second;
}

AnalysisStore::PutResult AnalysisStore::put(std::string_view id, const Analysis& a,
                                            const std::optional<std::string>& ifMatch) {
  if (!valid_id(id)) throw Error(ErrorCode::Argument, "invalid id", std::string(id));
  std::lock_guard guard(lock_for(id));

  const auto path = path_for(id);
  std::optional<std::string> current;
  if (auto bytes = read_file(path)) {
    try {
      current = content_etag(serialize_analysis(parse_analysis(*bytes)));
    } catch (const Error&) {
      current = content_etag(*bytes);  // unparseable file on disk: raw bytes
    }
  }

  if (current) {
    if (!ifMatch) return {PutStatus::Conflict, *current};
    const std::string want = unquote(*ifMatch);
    if (want != "*" && want != *current) return {PutStatus::Conflict, *current};
  } else if (ifMatch) {
    return {PutStatus::Conflict, {}};
  }

  const std::string canonical = serialize_analysis(a);
  const auto tmp = root_ / ("." + std::string(id) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write file", tmp.string());
    out << canonical;
    if (!out.flush()) throw Error(ErrorCode::Io, "cannot write file", tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, ec.message(), path.string());
  return {current ? PutStatus::Updated : PutStatus::Created, content_etag(canonical)};
}

}  // namespace scha::service
