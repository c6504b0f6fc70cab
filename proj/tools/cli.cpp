#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>

#include "CLI11.hpp"

#include "scha/clusters.hpp"
#include "scha/error.hpp"
#include "scha/format.hpp"
#include "scha/graph.hpp"
#include "scha/prolongation.hpp"
#include "scha/render.hpp"
#include "scha/service/server.hpp"
#include "scha/stats.hpp"
#include "scha/validate.hpp"

namespace scha::cli {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw Error(ErrorCode::Io, "cannot write file", path.string());
}

void report_error(const Error& e, std::ostream& err) {
  err << "ERROR " << to_string(e.code()) << ' ' << (e.location().empty() ? "-" : e.location()) << ' '
      << e.message() << '\n';
}

void print_findings(const ValidationReport& r, std::ostream& err) {
  for (const auto& f : r.findings) err << format_finding(f) << '\n';
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory", dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename().string().ends_with(".scha.json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<Analysis> load_corpus(const std::vector<fs::path>& files, unsigned jobs) {
  std::vector<Analysis> corpus(files.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < files.size(); k += jobs) {
        try {
          corpus[k] = load_analysis(files[k]);
        } catch (const Error& e) {
          throw Error(e.code(), e.message(), files[k].string() + (e.location().empty() ? "" : " " + e.location()));
        }
      }
    }));
  }
  for (auto& f : workers) f.get();
  return corpus;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schenkerian analysis toolkit: validate, reduce, graph, render and serve .scha.json files"};
  app.require_subcommand(1);

  std::string file;
  bool lenient = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check an analysis file");
  validate_cmd->add_option("FILE", file)->required();
  validate_cmd->add_flag("--lenient", lenient, "Downgrade V_NO_SURVIVOR to a warning");

  auto* canon_cmd = app.add_subcommand("canonicalize", "Print the canonical form of an analysis file");
  canon_cmd->add_option("FILE", file)->required();

  std::string out_path;
  std::string cluster_format = "csv";
  std::vector<std::size_t> compose_range;
  auto* clusters_cmd = app.add_subcommand("clusters", "Write the clustering matrices of an analysis");
  clusters_cmd->add_option("FILE", file)->required();
  clusters_cmd->add_option("--out", out_path, "Output directory")->required();
  clusters_cmd->add_option("--format", cluster_format)->check(CLI::IsMember({"csv", "json"}));
  clusters_cmd->add_option("--compose", compose_range, "Also write S_I_to_J")->expected(2);
  clusters_cmd->add_flag("--lenient", lenient);

  std::string pro_format = "kirlin";
  auto* pro_cmd = app.add_subcommand("prolongations", "Print prolongations derived from depths");
  pro_cmd->add_option("FILE", file)->required();
  pro_cmd->add_option("--format", pro_format)->check(CLI::IsMember({"kirlin", "json"}));

  std::string graph_format = "edgelist";
  std::optional<std::string> intervals;
  std::size_t window = 8;
  bool same_voice = false;
  std::vector<std::string> features;
  auto* graph_cmd = app.add_subcommand("graph", "Print the heterogeneous score graph");
  graph_cmd->add_option("FILE", file)->required();
  graph_cmd->add_option("--format", graph_format)->check(CLI::IsMember({"edgelist", "dot"}));
  graph_cmd->add_option("--linear-intervals", intervals, "Comma separated semitone intervals");
  graph_cmd->add_option("--window", window, "Linear edge look-ahead in verticalities")->check(CLI::PositiveNumber);
  graph_cmd->add_flag("--linear-same-voice", same_voice, "Restrict linear edges to the source voice");
  graph_cmd->add_option("--features", features, "Node feature columns")->delimiter(',');

  std::string dir;
  bool histograms = false;
  unsigned jobs = 1;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics over *.scha.json files");
  stats_cmd->add_option("DIR", dir)->required();
  stats_cmd->add_option("--out", out_path, "Output prefix")->required();
  stats_cmd->add_flag("--histograms", histograms, "Also write per-depth interval histograms");
  stats_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  auto* render_cmd = app.add_subcommand("render", "Render an analysis to SVG");
  render_cmd->add_option("FILE", file)->required();
  render_cmd->add_option("--out", out_path)->required();

  service::ServerOptions serve_opts;
  std::string cors;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a directory of analyses over HTTP");
  serve_cmd->add_option("--root", serve_opts.root)->required();
  serve_cmd->add_option("--port", serve_opts.port);
  serve_cmd->add_option("--host", serve_opts.host);
  serve_cmd->add_option("--cors", cors, "Allowed browser origin");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) {
      const ValidationReport report = validate(load_analysis(file), lenient);
      print_findings(report, err);
      return report.has_errors() ? kExitInvalid : kExitOk;
    }

    if (*canon_cmd) {
      out << serialize_analysis(load_analysis(file));
      return kExitOk;
    }

    if (*clusters_cmd) {
      const Analysis a = load_analysis(file);
      const ValidationReport report = validate(a, lenient);
      print_findings(report, err);
      if (report.has_errors()) return kExitInvalid;
      const ClusterStack stack = cluster_stack(a, {.lenient = lenient});
      const fs::path out_dir(out_path);
      if (cluster_format == "csv") {
        write_stack_csv(stack, out_dir);
      } else {
        write_file(out_dir / "clusters.json", stack_to_json(stack).dump(2) + "\n");
      }
      if (!compose_range.empty()) {
        const std::size_t i = compose_range[0], j = compose_range[1];
        const Eigen::MatrixXd m = compose(stack, i, j);
        const std::string stem = "S_" + std::to_string(i) + "_to_" + std::to_string(j);
        if (cluster_format == "csv") {
          write_file(out_dir / (stem + ".csv"), matrix_to_csv(m));
        } else {
          const auto& rows = stack.layers[i].rowLabels;
          const auto& cols = stack.layers[j - 1].colLabels;
          write_file(out_dir / (stem + ".json"), matrix_to_json(m, rows, cols).dump(2) + "\n");
        }
      }
      return kExitOk;
    }

    if (*pro_cmd) {
      const Analysis a = load_analysis(file);
      if (pro_format == "kirlin") {
        out << export_kirlin_text(a);
      } else {
        out << prolongations_to_json(all_prolongations(a)).dump(2) << '\n';
      }
      return kExitOk;
    }

    if (*graph_cmd) {
      const Analysis a = load_analysis(file);
      GraphConfig cfg;
      if (intervals) cfg.linearIntervals = parse_interval_list(*intervals);
      cfg.linearWindow = window;
      cfg.linearSameVoice = same_voice;
      cfg.featureColumns = features;
      out << export_graph(build_graph(a, cfg), graph_format == "dot" ? GraphFormat::Dot : GraphFormat::EdgeListJson);
      return kExitOk;
    }

    if (*stats_cmd) {
      const auto corpus = load_corpus(corpus_files(dir), jobs);
      const CorpusReport report = corpus_report(corpus);
      write_file(out_path + "_stats.csv", report_csv(report));
      if (histograms) {
        for (const auto& [d, h] : report.trebleIntervals) {
          write_file(out_path + "_intervals_treble_d" + std::to_string(d) + ".csv", histogram_csv(h));
        }
        for (const auto& [d, h] : report.bassIntervals) {
          write_file(out_path + "_intervals_bass_d" + std::to_string(d) + ".csv", histogram_csv(h));
        }
      }
      return kExitOk;
    }

    if (*render_cmd) {
      write_file(out_path, render_svg(derive_render_model(load_analysis(file))));
      return kExitOk;
    }

    if (*serve_cmd) {
      if (!cors.empty()) serve_opts.corsOrigin = cors;
      service::Server server(serve_opts);
      const int port = server.bind();
      err << "serving " << serve_opts.root.string() << " on http://" << serve_opts.host << ':' << port << '\n';
      server.run();
      return kExitOk;
    }
  } catch (const Error& e) {
    report_error(e, err);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ERROR E_IO - " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace scha::cli
