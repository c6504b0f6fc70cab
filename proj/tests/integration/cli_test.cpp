#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "scha/format.hpp"
#include "support/fixtures.hpp"

namespace scha {
namespace {

namespace fs = std::filesystem;
using namespace scha::testing;

const fs::path kData = SCHA_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "scha");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("scha-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const Analysis& a) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << serialize_analysis(a);
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, ValidateFixtures) {
  auto r = run_cli({"validate", (kData / "fixture_a.scha.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("WARNING W_NO_URSATZ"), std::string::npos);
  EXPECT_EQ(r.err.find("ERROR"), std::string::npos);
}

TEST_F(CliTest, ValidateReportsLengthMismatch) {
  auto r = run_cli({"validate", (kData / "bad_length.scha.json").string()});
  EXPECT_NE(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("ERROR E_LENGTH"), std::string::npos);
}

TEST_F(CliTest, ValidateInfeasibleAndLenient) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "D5", "E5"}, {1, 0, 1}),
                                    make_voice(Part::Bass, {"R", "C3", "G2"}, {-1, 0, 0})},
                                   3);
  const auto path = write("x.scha.json", a).string();
  auto strict = run_cli({"validate", path});
  EXPECT_EQ(strict.code, cli::kExitInvalid);
  EXPECT_NE(strict.err.find("ERROR V_NO_SURVIVOR bass"), std::string::npos);
  auto lenient = run_cli({"validate", "--lenient", path});
  EXPECT_EQ(lenient.code, cli::kExitOk);
  EXPECT_NE(lenient.err.find("WARNING W_NO_SURVIVOR bass"), std::string::npos);
}

TEST_F(CliTest, MissingFile) {
  auto r = run_cli({"validate", (dir_ / "nope.scha.json").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("ERROR E_IO"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"clusters", (kData / "fixture_a.scha.json").string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, ClustersCsvAndCompose) {
  auto r = run_cli({"clusters", (kData / "fixture_a.scha.json").string(), "--out", dir_.string(), "--compose",
                    "0", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "S0.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "S1.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "S2.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "S3.csv"));
  EXPECT_EQ(slurp(dir_ / "S_0_to_3.csv"), "1,0\n1,0\n1,0\n1,0\n0,1\n");
  EXPECT_EQ(slurp(dir_ / "S2.csv"), "1,0\n1,0\n0,1\n");
}

TEST_F(CliTest, ClustersJsonAndBadCompose) {
  auto r = run_cli({"clusters", (kData / "fixture_b.scha.json").string(), "--out", dir_.string(), "--format",
                    "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(slurp(dir_ / "clusters.json"));
  EXPECT_EQ(doc["layers"].size(), 2u);
  auto bad = run_cli({"clusters", (kData / "fixture_b.scha.json").string(), "--out", dir_.string(), "--compose",
                      "1", "5"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_NE(bad.err.find("ERROR E_BOUNDS"), std::string::npos);
}

TEST_F(CliTest, ClustersRefusesInvalidAnalysis) {
  const Analysis a = make_analysis({make_voice(Part::Soprano, {"C5", "D5"}, {1, 0}),
                                    make_voice(Part::Alto, {"E4", "F4"}, {0, 0})},
                                   2);
  auto r = run_cli({"clusters", write("x.scha.json", a).string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_NE(r.err.find("V_INNER_NEEDS_OUTER"), std::string::npos);
}

TEST_F(CliTest, ProlongationsKirlin) {
  auto r = run_cli({"prolongations", (kData / "fixture_a.scha.json").string()});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out,
            "sop:1 ( sop:2 ) sop:3\n"
            "sop:0 ( sop:1 sop:2 ) sop:3\n"
            "sop:0 ( sop:1 sop:2 sop:3 ) sop:4\n");
  auto j = run_cli({"prolongations", (kData / "fixture_a.scha.json").string(), "--format", "json"});
  ASSERT_EQ(j.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(j.out)["prolongations"].size(), 6u);
}

TEST_F(CliTest, GraphFormatsAndOptions) {
  const auto file = (kData / "fixture_b.scha.json").string();
  auto r = run_cli({"graph", file});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["nodes"].size(), 7u);
  EXPECT_EQ(doc["edges"].size(), 17u);

  auto none = run_cli({"graph", file, "--linear-intervals", ""});
  EXPECT_EQ(nlohmann::json::parse(none.out)["edges"].size(), 14u);

  auto dot = run_cli({"graph", file, "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);

  auto feat = run_cli({"graph", file, "--features", "octave,duration"});
  EXPECT_EQ(nlohmann::json::parse(feat.out)["nodes"][0]["features"].size(), 2u);

  auto bad = run_cli({"graph", file, "--features", "metric-strength"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_NE(bad.err.find("ERROR E_METER"), std::string::npos);
}

TEST_F(CliTest, StatsOverDirectory) {
  fs::create_directories(dir_ / "corpus");
  fs::copy_file(kData / "fixture_a.scha.json", dir_ / "corpus" / "a.scha.json");
  fs::copy_file(kData / "fixture_b.scha.json", dir_ / "corpus" / "b.scha.json");
  const auto prefix = (dir_ / "out" / "run").string();
  auto r = run_cli({"stats", (dir_ / "corpus").string(), "--out", prefix, "--histograms", "--jobs", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto csv = slurp(prefix + "_stats.csv");
  EXPECT_NE(csv.find("excerpts,,2\n"), std::string::npos);
  EXPECT_NE(csv.find("inclusive,0,12\n"), std::string::npos);
  EXPECT_EQ(slurp(prefix + "_intervals_treble_d3.csv"), "interval,count\n0,1\n");
}

TEST_F(CliTest, StatsRejectsBadFile) {
  fs::create_directories(dir_ / "corpus");
  fs::copy_file(kData / "bad_length.scha.json", dir_ / "corpus" / "bad.scha.json");
  auto r = run_cli({"stats", (dir_ / "corpus").string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("bad.scha.json"), std::string::npos);
}

TEST_F(CliTest, RenderWritesSvg) {
  const auto out = dir_ / "a.svg";
  auto r = run_cli({"render", (kData / "fixture_a.scha.json").string(), "--out", out.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto svg = slurp(out);
  EXPECT_NE(svg.find("id=\"slur-sop-3-0-4\""), std::string::npos);
}

TEST_F(CliTest, CanonicalizeMatchesGolden) {
  auto r = run_cli({"canonicalize", (kData / "fixture_a.scha.json").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, slurp(kData / "fixture_a.canonical.scha.json"));
}

}  // namespace
}  // namespace scha
