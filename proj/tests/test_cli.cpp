#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpargmin/cli.hpp"
#include "cpargmin/keyvalue.hpp"

using namespace cpargmin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cpargmin_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

int tool(const std::string& args, const fs::path& stderr_file) {
  const std::string cmd = std::string(CPARGMIN_TOOL) + " " + args + " > /dev/null 2> " + stderr_file.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kConfig =
    "k = 1\nx_law = uniform(0,1)\nnoise = gaussian(0,0.25)\ntrue_tau = 0.5\ntrue_alpha = 0,1\n"
    "n_grid = 50,100\nreplications_data = 1000\nreplications_limit = 2000\nmaster_seed = 11\n"
    "tail_threshold = 50\n"
    "set.centre = closed ; [-2,2] ; all ; all\nset.inner = open ; (-5,5) ; (-inf,inf) ; (-inf,inf)\n";

}  // namespace

TEST(CliFit, PerfectFit) {
  auto dir = scratch("fit");
  write(dir / "data.csv", "x,y\n1,0\n2,0\n3,1\n4,1\n");
  std::ostringstream err;
  ASSERT_EQ(run_fit((dir / "data.csv").string(), 1, (dir / "out").string(), err), 0) << err.str();
  auto fit = KeyValueFile::load((dir / "out" / "fit.txt").string());
  EXPECT_EQ(fit.require("sse"), "0");
  EXPECT_EQ(fit.require("tau"), "2");
  EXPECT_EQ(read_file((dir / "out" / "residuals.csv").string()),
            "x,y,fitted,residual\n1,0,0,0\n2,0,0,0\n3,1,1,0\n4,1,1,0\n");
  EXPECT_TRUE(fs::exists(dir / "out" / "DONE"));
  auto manifest = KeyValueFile::load((dir / "out" / "manifest.txt").string());
  EXPECT_EQ(manifest.require("command"), "fit");
  EXPECT_EQ(manifest.require("tool_version"), kToolVersion);
}

TEST(CliFit, ExitCodes) {
  auto dir = scratch("fit_errors");
  write(dir / "empty.csv", "");
  write(dir / "data.csv", "x,y\n1,0\n2,0\n3,1\n4,1\n");
  EXPECT_EQ(tool("fit --data " + (dir / "empty.csv").string() + " --k 1 --out " + (dir / "o1").string(),
                 dir / "e1"),
            2);
  EXPECT_EQ(tool("fit --data " + (dir / "data.csv").string() + " --k 4 --out " + (dir / "o2").string(), dir / "e2"),
            3);
  EXPECT_FALSE(fs::exists(dir / "o2" / "DONE"));
  EXPECT_EQ(tool("fit --data " + (dir / "missing.csv").string() + " --k 1 --out " + (dir / "o3").string(),
                 dir / "e3"),
            2);
  EXPECT_EQ(tool("fit --k 1", dir / "e4"), 2);
  write(dir / "blocker", "file");
  EXPECT_EQ(tool("fit --data " + (dir / "data.csv").string() + " --k 1 --out " + (dir / "blocker" / "out").string(),
                 dir / "e5"),
            2);
  EXPECT_EQ(tool("fit --data " + (dir / "data.csv").string() + " --k 1 --out " + (dir / "o6").string(), dir / "e6"),
            0);
}

TEST(CliVerify, MissingKeyNamed) {
  auto dir = scratch("missing_key");
  std::string cfg = kConfig;
  cfg.erase(cfg.find("true_alpha"), std::string("true_alpha = 0,1\n").size());
  write(dir / "cfg.txt", cfg);
  EXPECT_EQ(tool("verify --config " + (dir / "cfg.txt").string() + " --out " + (dir / "out").string(), dir / "err"),
            2);
  EXPECT_NE(read_file((dir / "err").string()).find("true_alpha"), std::string::npos);
}

TEST(CliVerify, ByteIdenticalAcrossWorkers) {
  auto dir = scratch("verify");
  write(dir / "cfg.txt", kConfig);
  const std::string cfg = (dir / "cfg.txt").string();
  ASSERT_EQ(tool("verify --config " + cfg + " --out " + (dir / "w1").string() + " --workers 1", dir / "e1"), 0)
      << read_file((dir / "e1").string());
  ASSERT_EQ(tool("verify --config " + cfg + " --out " + (dir / "w3").string() + " --workers 3", dir / "e3"), 0);
  for (const char* f : {"inequality.csv", "tail.csv", "summary.txt", "manifest.txt", "DONE"}) {
    ASSERT_TRUE(fs::exists(dir / "w1" / f)) << f;
    if (std::string(f) != "manifest.txt") {
      EXPECT_EQ(read_file((dir / "w1" / f).string()), read_file((dir / "w3" / f).string())) << f;
    }
  }
  EXPECT_EQ(read_file((dir / "w1" / "summary.txt").string()).substr(0, 14), "verdict = pass");
  EXPECT_FALSE(fs::exists(dir / "w1" / "product.csv"));
}

TEST(CliCoverage, SeedOverrideAndDeterminism) {
  auto dir = scratch("coverage");
  write(dir / "cfg.txt", kConfig);
  const std::string cfg = (dir / "cfg.txt").string();
  std::ostringstream err;
  EXPECT_EQ(run_coverage(cfg, (dir / "a").string(), 5u, 1, err), 0) << err.str();
  EXPECT_EQ(run_coverage(cfg, (dir / "b").string(), 5u, 2, err), 0) << err.str();
  EXPECT_EQ(read_file((dir / "a" / "coverage.txt").string()), read_file((dir / "b" / "coverage.txt").string()));
  EXPECT_EQ(KeyValueFile::load((dir / "a" / "manifest.txt").string()).require("master_seed"), "5");
}

TEST(CliLimit, SimulateAndCapacity) {
  auto dir = scratch("limit");
  write(dir / "spec.txt", "rate_right = 1\nrate_left = 1\njump_right = point(1)\njump_left = point(1)\n");
  const std::string spec = (dir / "spec.txt").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_simulate_limit(spec, 100, 9, (dir / "out").string(), 2, err), 0) << err.str();
  EXPECT_EQ(read_file((dir / "out" / "samples.csv").string()).substr(0, 25), "rep,xi_min,xi_max,redraws");
  ASSERT_EQ(run_capacity(spec, "(-inf,0]", false, 1000, 9, 1, out, err), 0) << err.str();
  EXPECT_EQ(out.str().substr(0, 12), "capacity = 1");
  out.str("");
  ASSERT_EQ(run_capacity(spec, "(-inf,0)", true, 1000, 9, 1, out, err), 0);
  EXPECT_EQ(out.str().substr(0, 15), "containment = 0");
  EXPECT_EQ(run_capacity(spec, "[0,1", false, 10, 9, 1, out, err), 2);
  write(dir / "bad.txt", "rate_right = -1\n");
  EXPECT_EQ(run_capacity((dir / "bad.txt").string(), "all", false, 10, 9, 1, out, err), 2);
}
