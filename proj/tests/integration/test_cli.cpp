#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "edgesync/harness.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Result run(const std::string& args) {
  const std::string cmd = std::string(EDGESYNC_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string config(const char* name) { return std::string(EDGESYNC_SOURCE_DIR) + "/configs/" + name; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("edgesync_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kSmall = " --set zone.resolution=[40,40]";

}  // namespace

TEST(Cli, RunPrintsCsv) {
  const Result r = run("run --config " + config("desk.json") + kSmall);
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.rfind(edgesync::csv_header(4) + "\n", 0), 0u);
  EXPECT_NE(r.out.find("\not,60,"), std::string::npos);
}

TEST(Cli, SeedAndMethodFlags) {
  const Result a = run("run --config " + config("desk.json") + kSmall + " --seed 3 --method snr");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_NE(a.out.find("\nsnr,60,"), std::string::npos);
  const Result b = run("run --config " + config("desk.json") + kSmall + " --set dts.seed=3 --method snr");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SweepWritesPairs) {
  const auto out = temp_file("sweep.csv");
  const Result r = run("sweep --config " + config("desk.json") + kSmall + " --axis dts --values 0,10 --out " +
                       out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream csv(slurp(out));
  std::string line;
  std::size_t rows = 0;
  std::getline(csv, line);
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 4u);
  std::filesystem::remove(out);
}

TEST(Cli, DumpsDifferBetweenMethods) {
  const auto ot = temp_file("ot.csv"), snr = temp_file("snr.csv");
  ASSERT_EQ(run("dump-partition --config " + config("desk.json") + kSmall + " --method ot --out " + ot.string()).status, 0);
  ASSERT_EQ(run("dump-partition --config " + config("desk.json") + kSmall + " --method snr --out " + snr.string()).status, 0);
  const std::string a = slurp(ot), b = slurp(snr);
  EXPECT_EQ(a.rfind("cell_x,cell_y,server_id,g_value\n", 0), 0u);
  EXPECT_NE(a, b);
  std::filesystem::remove(ot);
  std::filesystem::remove(snr);
}

TEST(Cli, SingleServerDumpIsConstant) {
  const auto out = temp_file("one.csv");
  const Result r = run("dump-partition --config " + config("desk.json") + kSmall +
                       " --set servers=[{\\\"position_m\\\":[300,300],\\\"compute_hz\\\":8e9,\\\"bandwidth_hz\\\":1e7}]"
                       " --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  std::ifstream in(out);
  const auto rows = edgesync::read_partition(in);
  ASSERT_EQ(rows.size(), 1600u);
  std::set<edgesync::ServerIndex> ids;
  for (const auto& row : rows) ids.insert(row.server);
  EXPECT_EQ(ids, std::set<edgesync::ServerIndex>{0});
  std::filesystem::remove(out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("run --config /nonexistent.json").status, 1);
  EXPECT_EQ(run("run --config " + config("desk.json") + " --set solver.bogus=1").status, 1);
  EXPECT_EQ(run("sweep --config " + config("desk.json") + " --axis dts --values \"\"").status, 1);
  EXPECT_NE(run("run").status, 0);

  const Result strict = run("run --config " + config("paper.json") + kSmall +
                            " --set solver.infeasible_policy=strict");
  EXPECT_EQ(strict.status, 2) << strict.out;
  EXPECT_NE(strict.out.find("InfeasibleDeadline"), std::string::npos) << strict.out;
}
