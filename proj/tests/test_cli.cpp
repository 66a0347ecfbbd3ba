#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "netcode/cli.hpp"

using namespace netcode;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "netcode");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("netcode_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, DetectPassesAndReportsJson) {
  auto r = run({"detect", "--graph", "cycle:4", "--code", "parity", "--protocol", "parity", "--m", "2", "--format",
                "json", "--no-timestamp"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  auto j = json_of(r);
  EXPECT_EQ(j["tool"], "netcode");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_FALSE(j.contains("generated_at"));
  EXPECT_EQ(j["config"]["graph"], "cycle:4");
}

TEST(Cli, TimestampOnlyWhenRequested) {
  auto r = run({"bounds", "--n", "4", "--k", "2", "--mds", "--format", "json"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_TRUE(json_of(r).contains("generated_at"));
}

TEST(Cli, CorrectWithCycleProtocol) {
  auto r = run({"correct", "--graph", "cycle:4", "--m", "2", "--format", "text", "--no-timestamp"});
  EXPECT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, BoundsCsvSchema) {
  auto r = run({"bounds", "--n", "4", "--k", "2", "--mds", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_EQ(r.out.rfind("bound,value,applicability\n", 0), 0u);
  EXPECT_NE(r.out.find("\ncombined,3,"), std::string::npos);
  EXPECT_EQ(r.out.find("generated_at"), std::string::npos);
}

TEST(Cli, BoundsOnCycleGraph) {
  auto r = run({"bounds", "--graph", "cycle:5", "--n", "5", "--k", "1", "--d", "5", "--format", "json",
                "--no-timestamp"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_NE(r.out.find("5/2"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"detect", "--graph", "cycle:4", "--protocol", "nonsense", "--m", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"correct", "--graph", "cycle:4", "--m", "2", "--t", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"detect", "--graph", "cycle:4", "--m", "2", "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(run({"detect", "--graph", "wheel:4", "--m", "2"}).code, cli::kUsage);
}

TEST(Cli, BudgetOverflowIsAUsageError) {
  auto r = run({"detect", "--graph", "cycle:4", "--m", "2", "--budget", "10"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, FlagOverridesEnvironmentBudget) {
  ::setenv("NETCODE_BUDGET", "10", 1);
  EXPECT_EQ(run({"detect", "--graph", "cycle:4", "--m", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"detect", "--graph", "cycle:4", "--m", "2", "--budget", "1000"}).code, cli::kPass);
  ::setenv("NETCODE_BUDGET", "junk", 1);
  EXPECT_EQ(run({"detect", "--graph", "cycle:4", "--m", "2"}).code, cli::kUsage);
  ::unsetenv("NETCODE_BUDGET");
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  auto cfg = temp_file("cfg.ini", "graph=cycle:3\nm=3\nformat=json\n");
  auto r = run({"--config", cfg.string(), "detect", "--no-timestamp"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_EQ(json_of(r)["config"]["m"], 3);
  auto r2 = run({"--config", cfg.string(), "detect", "--m", "2", "--no-timestamp"});
  ASSERT_EQ(r2.code, cli::kPass) << r2.err;
  EXPECT_EQ(json_of(r2)["config"]["m"], 2);
}

TEST(Cli, OutputFileAndJobsIndependence) {
  auto p1 = std::filesystem::temp_directory_path() / "netcode_test_j1.json";
  auto p4 = std::filesystem::temp_directory_path() / "netcode_test_j4.json";
  const std::vector<std::string> base{"correct", "--graph", "cycle:4", "--m", "2", "--format", "json",
                                      "--no-timestamp"};
  auto a = base, b = base;
  a.insert(a.end(), {"--jobs", "1", "--output", p1.string()});
  b.insert(b.end(), {"--jobs", "4", "--output", p4.string()});
  ASSERT_EQ(run(a).code, cli::kPass);
  ASSERT_EQ(run(b).code, cli::kPass);
  std::ifstream f1(p1), f4(p4);
  std::stringstream s1, s4;
  s1 << f1.rdbuf();
  s4 << f4.rdbuf();
  EXPECT_FALSE(s1.str().empty());
  EXPECT_EQ(s1.str(), s4.str());
}

TEST(Cli, FreeSetAndBuildF) {
  auto r = run({"free-set", "--m", "4", "--format", "json", "--no-timestamp"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  auto r2 = run({"build-f", "--m", "2", "--n", "3", "--format", "text", "--no-timestamp"});
  ASSERT_EQ(r2.code, cli::kPass) << r2.err;
  EXPECT_FALSE(r2.out.empty());
}

TEST(Cli, VerifyAllSubsetAndMutation) {
  auto r = run({"verify-all", "--criteria", "1", "--format", "json", "--no-timestamp"});
  EXPECT_EQ(r.code, cli::kPass) << r.out;
  auto bad = run({"verify-all", "--mutate", "--criteria", "1", "--format", "json", "--no-timestamp"});
  EXPECT_EQ(bad.code, cli::kFailure);
  EXPECT_NE(bad.out.find("counterexample"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const std::string exe = NETCODE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("bounds --n 4 --k 2 --mds"), 0);
  EXPECT_EQ(status("detect --graph cycle:4 --protocol nonsense --m 2"), 2);
  EXPECT_EQ(status("verify-all --mutate --criteria 1"), 1);
}
