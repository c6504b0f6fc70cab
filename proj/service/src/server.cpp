#include "scha/service/server.hpp"

#include <nlohmann/json.hpp>

#include "scha/clusters.hpp"
#include "scha/error.hpp"
#include "scha/format.hpp"
#include "scha/graph.hpp"
#include "scha/prolongation.hpp"
#include "scha/render.hpp"
#include "scha/service/store.hpp"
#include "scha/stats.hpp"
#include "scha/validate.hpp"

// After the Eigen-based headers: <resolv.h> defines a _res macro.
#include <httplib.h>

namespace scha::service {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                const json* findings = nullptr) {
  json body{{"code", code}, {"message", message}};
  if (findings) body["findings"] = *findings;
  send_json(res, status, body);
}

json error_findings(const Error& e) {
  return json::array({to_json(Finding{Severity::Error, std::string(to_string(e.code())), e.location(),
                                      e.message()})});
}

bool flag_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return false;
  const std::string v = req.get_param_value(name);
  return v.empty() || v == "1" || v == "true" || v == "yes";
}

std::string quote_etag(const std::string& etag) { return "\"" + etag + "\""; }

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions o) : opts(std::move(o)), store(opts.root) {}

  ServerOptions opts;
  AnalysisStore store;
  httplib::Server http;
  int port = 0;

  /// Loads a stored analysis or writes the 400/404/422 response and returns
  /// nullopt.
  std::optional<std::pair<StoredAnalysis, Analysis>> load(const std::string& id, httplib::Response& res) {
    if (!AnalysisStore::valid_id(id)) {
      send_error(res, 400, "E_ID", "invalid analysis id");
      return std::nullopt;
    }
    try {
      auto stored = store.get(id);
      if (!stored) {
        send_error(res, 404, "E_NOT_FOUND", "no analysis with id " + id);
        return std::nullopt;
      }
      Analysis a = parse_analysis(stored->document);
      return std::make_pair(std::move(*stored), std::move(a));
    } catch (const Error& e) {
      const json f = error_findings(e);
      send_error(res, 422, to_string(e.code()), e.message(), &f);
      return std::nullopt;
    }
  }

  void routes() {
    http.Get("/api/analyses", [this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& id : store.list_ids()) {
        try {
          auto stored = store.get(id);
          if (!stored) continue;
          const Analysis a = parse_analysis(stored->document);
          list.push_back({{"id", id},
                          {"meta", analysis_to_json(a)["meta"]},
                          {"nv", a.slot_count()},
                          {"maxDepth", a.max_depth()}});
        } catch (const Error&) {
          // Unparseable files are not listed.
        }
      }
      send_json(res, 200, list);
    });

    http.Get(R"(/api/analyses/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto loaded = load(req.matches[1], res);
      if (!loaded) return;
      res.set_header("ETag", quote_etag(loaded->first.etag));
      res.set_content(loaded->first.document, kJson);
    });

    http.Put(R"(/api/analyses/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      if (!AnalysisStore::valid_id(id)) return send_error(res, 400, "E_ID", "invalid analysis id");

      Analysis a;
      try {
        a = parse_analysis(req.body);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Syntax) return send_error(res, 400, "E_SYNTAX", e.message());
        const json f = error_findings(e);
        return send_error(res, 422, to_string(e.code()), e.message(), &f);
      }

      const ValidationReport report = validate(a, flag_param(req, "lenient"));
      const json findings = to_json(report)["findings"];
      if (report.has_errors()) {
        return send_error(res, 422, "E_VALIDATION", "analysis failed validation", &findings);
      }

      std::optional<std::string> if_match;
      if (req.has_header("If-Match")) if_match = req.get_header_value("If-Match");
      try {
        const auto result = store.put(id, a, if_match);
        if (result.status == AnalysisStore::PutStatus::Conflict) {
          return send_error(res, 409, "E_CONFLICT",
                            if_match ? "If-Match does not match the stored version"
                                     : "analysis exists; If-Match is required to replace it");
        }
        res.set_header("ETag", quote_etag(result.etag));
        send_json(res, result.status == AnalysisStore::PutStatus::Created ? 201 : 200,
                  {{"id", id}, {"etag", result.etag}, {"findings", findings}});
      } catch (const Error& e) {
        send_error(res, 500, to_string(e.code()), e.message());
      }
    });

    http.Post(R"(/api/analyses/([^/]+)/validate)", [this](const httplib::Request& req, httplib::Response& res) {
      const bool lenient = flag_param(req, "lenient");
      if (!req.body.empty()) {
        // Validate a candidate document without storing it.
        try {
          return send_json(res, 200, to_json(validate(parse_analysis(req.body), lenient)));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::Syntax) return send_error(res, 400, "E_SYNTAX", e.message());
          return send_json(res, 200, {{"ok", false}, {"findings", error_findings(e)}});
        }
      }
      auto loaded = load(req.matches[1], res);
      if (!loaded) return;
      send_json(res, 200, to_json(validate(loaded->second, lenient)));
    });

    http.Get(R"(/api/analyses/([^/]+)/derived/([a-z]+))", [this](const httplib::Request& req,
                                                                 httplib::Response& res) {
      const std::string kind = req.matches[2];
      if (kind != "clusters" && kind != "prolongations" && kind != "graph" && kind != "render") {
        return send_error(res, 404, "E_NOT_FOUND", "unknown derived view " + kind);
      }
      auto loaded = load(req.matches[1], res);
      if (!loaded) return;
      const auto& [stored, a] = *loaded;
      res.set_header("ETag", quote_etag(stored.etag));
      try {
        if (kind == "clusters") {
          const bool lenient = flag_param(req, "lenient");
          const ValidationReport report = validate(a, lenient);
          if (report.has_errors()) {
            const json findings = to_json(report)["findings"];
            return send_error(res, 422, "E_VALIDATION", "analysis cannot be clustered", &findings);
          }
          return send_json(res, 200, stack_to_json(cluster_stack(a, {.lenient = lenient})));
        }
        if (kind == "prolongations") return send_json(res, 200, prolongations_to_json(all_prolongations(a)));
        if (kind == "graph") {
          GraphConfig cfg;
          if (req.has_param("intervals")) cfg.linearIntervals = parse_interval_list(req.get_param_value("intervals"));
          if (req.has_param("window")) cfg.linearWindow = std::stoul(req.get_param_value("window"));
          cfg.linearSameVoice = flag_param(req, "sameVoice");
          return send_json(res, 200, graph_to_json(build_graph(a, cfg)));
        }
        res.status = 200;
        res.set_content(render_svg(derive_render_model(a)), "image/svg+xml");
      } catch (const Error& e) {
        const json f = error_findings(e);
        send_error(res, 422, to_string(e.code()), e.message(), &f);
      } catch (const std::exception& e) {
        send_error(res, 400, "E_ARGUMENT", e.what());
      }
    });

    http.Get("/api/corpus/stats", [this](const httplib::Request&, httplib::Response& res) {
      std::vector<Analysis> corpus;
      for (const auto& id : store.list_ids()) {
        try {
          if (auto stored = store.get(id)) corpus.push_back(parse_analysis(stored->document));
        } catch (const Error&) {
        }
      }
      send_json(res, 200, to_json(corpus_report(corpus)));
    });

    if (opts.corsOrigin) {
      const std::string origin = *opts.corsOrigin;
      http.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Expose-Headers", "ETag");
      });
      http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, If-Match");
        res.status = 204;
      });
    }
  }
};

Server::Server(ServerOptions opts) : impl_(std::make_unique<Impl>(std::move(opts))) { impl_->routes(); }

Server::~Server() { stop(); }

int Server::bind() {
  auto& h = impl_->http;
  if (impl_->opts.port == 0) {
    impl_->port = h.bind_to_any_port(impl_->opts.host);
  } else {
    impl_->port = h.bind_to_port(impl_->opts.host, impl_->opts.port) ? impl_->opts.port : -1;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::Io, "cannot bind " + impl_->opts.host + ":" + std::to_string(impl_->opts.port));
  }
  return impl_->port;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace scha::service
