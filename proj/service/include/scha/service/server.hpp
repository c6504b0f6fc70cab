#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace scha::service {

struct ServerOptions {
  std::filesystem::path root;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::string> corsOrigin;
};

/// JSON API over an AnalysisStore:
///   GET  /api/analyses
///   GET  /api/analyses/{id}
///   PUT  /api/analyses/{id}               (If-Match)
///   POST /api/analyses/{id}/validate
///   GET  /api/analyses/{id}/derived/{clusters|prolongations|graph|render}
///   GET  /api/corpus/stats
class Server {
 public:
  explicit Server(ServerOptions opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the listening socket and returns the bound port. Throws
  /// scha::Error(E_IO) on failure.
  int bind();
  /// Serves until stop(); call bind() first.
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scha::service
