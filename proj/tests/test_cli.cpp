#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TORICLASS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, EnumerateCounts) {
  const auto dir = std::filesystem::temp_directory_path() / "toriclass_cli_test";
  std::filesystem::create_directories(dir);
  const auto r = run("enumerate --k 7 --out " + (dir / "c7.txt").string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("22"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "c7.txt"));
  EXPECT_NE(run("enumerate --k 2 --out " + (dir / "c2.txt").string()).out.find("1"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, AnalyzeSegmentOverEight) {
  const auto r = run("analyze --id P7_1 --q 8 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = json_of(r)[0];
  EXPECT_EQ(j["d"], 7);
  EXPECT_EQ(j["expected_d"], "Exact(7)");
  EXPECT_EQ(j["expected_mismatch"], false);
}

TEST(Cli, AnalyzeEnumerator) {
  const auto j = json_of(run("analyze --id P7_5 --q 7 --format json --enumerator"))[0];
  EXPECT_EQ(j["enumerator"][0]["weight"], 36);
  EXPECT_EQ(j["enumerator"][0]["count"], 7206);
}

TEST(Cli, CompareExitCodes) {
  const auto eq = run("compare --a P7_22 --b P7_15 --q 7 --format json");
  EXPECT_EQ(eq.status, 0);
  EXPECT_EQ(json_of(eq)["verdict"], "Equivalent");
  EXPECT_EQ(json_of(eq)["witness_verified"], true);
  const auto ne = run("compare --a P7_5 --b P7_6 --q 7 --format json");
  EXPECT_EQ(ne.status, 1);
  EXPECT_EQ(json_of(ne)["certificate"], "weight_distribution@36");
  EXPECT_EQ(run("compare --a P7_17 --b P7_17 --q 8").status, 0);
}

TEST(Cli, Bounds) {
  const auto r = run("bounds --id P7_13 --q 23 --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("432"), std::string::npos);
}

TEST(Cli, Errors) {
  EXPECT_EQ(run("analyze --id P7_1 --q 6").status, 3);
  EXPECT_EQ(run("compare --a P7_5 --b P6_3 --q 7").status, 3);
  EXPECT_EQ(run("show --id P9_1").status, 3);
}

TEST(Cli, TooLargeReportsBoundsOnly) {
  const auto r = run("analyze --id P7_9 --q 37 --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("TooLarge"), std::string::npos);
  EXPECT_NE(r.out.find("1188"), std::string::npos);
}
