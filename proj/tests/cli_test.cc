#include "chroma/cli.hpp"
#include "chroma/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace chroma {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  json report;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json report;
  if (!out.str().empty()) report = json::parse(out.str());
  return {code, report, err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "chroma_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, ClassifyAdditiveEquation) {
  const auto r = invoke({"classify", "--eq", "[1,1,-1]"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["chi_vanishing"], false);
  EXPECT_EQ(r.report["k"], 3);
  EXPECT_EQ(r.report["C"], 1);
  EXPECT_EQ(r.report["D"], 3);
  EXPECT_EQ(r.report["command"], "classify");
  EXPECT_TRUE(r.report.contains("timing"));
}

TEST(Cli, ClassifyRegions) {
  EXPECT_EQ(invoke({"classify", "--eq", "[1,-2,3,-4]"}).report["region"], "chi_vanishing");
  EXPECT_EQ(invoke({"classify", "--eq", "[1,-3,2]"}).report["region"], "roth");
  EXPECT_EQ(invoke({"classify", "--eq", "[1,-1,3]"}).report["region"], "rt");
}

TEST(Cli, KneserBound) {
  const auto r = invoke({"kneser", "chi-bound", "--n", "125", "--p", "5", "--k", "5"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["bound"], "1");
}

TEST(Cli, KneserEnumerateCountsVertices) {
  const auto r = invoke({"kneser", "enumerate", "--n", "5", "--k", "2", "--m", "1", "--limit", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["vertices"], 10);
}

TEST(Cli, PetersenRoundTripThroughDimacs) {
  const auto path = scratch("petersen.col");
  const auto adj = invoke({"kneser", "adjacency", "--n", "5", "--k", "2", "--m", "1", "--dimacs-out", path.string()});
  ASSERT_EQ(adj.code, cli::kExitOk) << adj.err;
  const auto chi = invoke({"cayley", "chi", "--dimacs", path.string(), "--witness"});
  ASSERT_EQ(chi.code, cli::kExitOk) << chi.err;
  EXPECT_EQ(chi.report["chi"], 3);
  const auto alpha = invoke({"cayley", "alpha", "--dimacs", path.string()});
  EXPECT_EQ(alpha.report["alpha"], 4);
}

TEST(Cli, CayleyCycle) {
  const auto r = invoke({"cayley", "chi", "--group", "Z(7)", "--elements", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["chi"], 3);
}

TEST(Cli, ConfigFileAndPrecedence) {
  const auto path = scratch("bound.json");
  std::ofstream(path) << R"({"command": "kneser chi-bound", "n": 125, "p": 5, "k": 5})";
  const auto r = invoke({"--config", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["bound"], "1");
  // (250/5 - 5) / 20 = 9/4
  const auto over = invoke({"--config", path.string(), "kneser", "chi-bound", "--n", "250"});
  ASSERT_EQ(over.code, cli::kExitOk) << over.err;
  EXPECT_EQ(over.report["bound"], "9/4");
}

TEST(Cli, UnknownConfigFieldIsRejected) {
  const auto path = scratch("bad.json");
  std::ofstream(path) << R"({"command": "classify", "eq": "[1,1,-1]", "colour": 3})";
  const auto r = invoke({"--config", path.string()});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_NE(r.err.find("unknown config field"), std::string::npos);
}

TEST(Cli, ErrorsExitWithOne) {
  EXPECT_EQ(invoke({"classify", "--eq", "[1,x]"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"kneser", "chi-bound", "--n", "10", "--k", "1", "--m", "3", "--p", "7"}).code,
            cli::kExitError);
}

TEST(Cli, BohrColorReports) {
  const auto r = invoke({"bohr-color", "--p", "101", "--elements", "1", "--eq", "[1,-2,1]"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.report["proper"], true);
  EXPECT_LE(r.report["colors_used"].get<int>(), 3);
}

TEST(Cli, ReportsAreDeterministicApartFromTiming) {
  const std::vector<std::string> args{"indep-set", "--p", "3", "--n", "8", "--lambda", "1"};
  auto a = invoke(args);
  auto b = invoke(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.report["size"], 17);
  EXPECT_EQ(a.report["independent"], true);
  a.report.erase("timing");
  b.report.erase("timing");
  EXPECT_EQ(a.report.dump(), b.report.dump());
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = scratch("report.json");
  std::ostringstream out, err;
  ASSERT_EQ(cli::run({"--out", path.string(), "classify", "--eq", "[1,-2,1]"}, out, err), cli::kExitOk) << err.str();
  EXPECT_TRUE(out.str().empty());
  std::ifstream is(path);
  const auto report = json::parse(is);
  EXPECT_EQ(report["chi_vanishing"], true);
}

TEST(Cli, Durations) {
  EXPECT_EQ(cli::parse_duration("90").count(), 90000);
  EXPECT_EQ(cli::parse_duration("90s").count(), 90000);
  EXPECT_EQ(cli::parse_duration("1500ms").count(), 1500);
  EXPECT_EQ(cli::parse_duration("2m").count(), 120000);
  EXPECT_EQ(cli::parse_duration("1h").count(), 3600000);
  EXPECT_THROW(cli::parse_duration("soon"), ParseError);
}

#ifdef CHROMA_CLI_PATH
TEST(Cli, BinaryExitCodes) {
  const std::string bin = CHROMA_CLI_PATH;
  auto status = [&](const std::string& rest) {
    const int raw = std::system((bin + " " + rest + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("classify --eq [1,1,-1]"), 0);
  EXPECT_EQ(status("classify --eq nonsense"), 1);
}
#endif

}  // namespace
}  // namespace chroma
