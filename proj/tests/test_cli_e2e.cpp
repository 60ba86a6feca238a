#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path kWorkDir = fs::path(RITZLAG_E2E_DIR);

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(RITZLAG_CLI_PATH) + " " + args + " > " + (kWorkDir / "stdout.txt").string() +
      " 2> " + (kWorkDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliE2E : public ::testing::Test {
 protected:
  void SetUp() override { fs::create_directories(kWorkDir); }
};

}  // namespace

TEST_F(CliE2E, SingleRunWritesCsvWithPinnedHeader) {
  const fs::path out = kWorkDir / "p1.csv";
  ASSERT_EQ(run_cli("--problem P1 --n 9 --out " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_EQ(content.substr(0, content.find('\n')),
            "problem,N,s,basis,nu,central_err_pct,boundary_err_pct,sup_err,energy,wall_ms");
  EXPECT_NE(content.find("P1,9,0,plain,"), std::string::npos);
  EXPECT_TRUE(fs::exists(out.string() + ".provenance.json"));
}

TEST_F(CliE2E, ByteStableOutputs) {
  const fs::path a = kWorkDir / "a.csv";
  const fs::path b = kWorkDir / "b.csv";
  ASSERT_EQ(run_cli("--preset table1 --out " + a.string()), 0);
  ASSERT_EQ(run_cli("--preset table1 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST_F(CliE2E, FrequenciesPresetUsesPinnedHeader) {
  const fs::path out = kWorkDir / "freq.csv";
  ASSERT_EQ(run_cli("--preset frequencies --out " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_EQ(content.substr(0, content.find('\n')), "m,n,omega_est,omega_exact,rel_err");
  // nine rows + header
  EXPECT_EQ(std::count(content.begin(), content.end(), '\n'), 10);
}

TEST_F(CliE2E, Table2PresetFinishesWithinBudget) {
  const fs::path out = kWorkDir / "t2.csv";
  const auto start = std::chrono::steady_clock::now();
  ASSERT_EQ(run_cli("--preset table2 --out " + out.string()), 0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);
  const std::string content = slurp(out);
  EXPECT_EQ(std::count(content.begin(), content.end(), '\n'), 5);  // header + four rows
  EXPECT_NE(content.find("P5,10,5,plain"), std::string::npos);
}

TEST_F(CliE2E, TauDemoEmitsVerdicts) {
  const fs::path out = kWorkDir / "tau.csv";
  ASSERT_EQ(run_cli("--preset tau-demo --out " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_NE(content.find("inconsistent"), std::string::npos);
  EXPECT_NE(content.find("trivial_only"), std::string::npos);
}

TEST_F(CliE2E, DegenerateConfigurationExitsWithTwo) {
  EXPECT_EQ(run_cli("--problem P4 --n 2 --s 3"), 2);
  const std::string err = slurp(kWorkDir / "stderr.txt");
  EXPECT_NE(err.find("N_tot"), std::string::npos);
}

TEST_F(CliE2E, SweepSkipsDegeneratePairsAndKeepsGoing) {
  const fs::path out = kWorkDir / "sweep.csv";
  ASSERT_EQ(run_cli("--problem P4 --n 2,5 --s 4 --out " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_EQ(std::count(content.begin(), content.end(), '\n'), 2);  // header + surviving row
  EXPECT_NE(content.find("P4,5,4"), std::string::npos);
}

TEST_F(CliE2E, IoFailureExitsWithFour) {
  EXPECT_EQ(run_cli("--problem P1 --n 5 --out /nonexistent-dir/x.csv"), 4);
}

TEST_F(CliE2E, UnknownPresetExitsWithOne) { EXPECT_EQ(run_cli("--preset table9"), 1); }

TEST_F(CliE2E, MarkdownGoesToStdout) {
  ASSERT_EQ(run_cli("--preset table1 --format markdown"), 0);
  const std::string out = slurp(kWorkDir / "stdout.txt");
  EXPECT_NE(out.find("| N | s |"), std::string::npos);
}

TEST_F(CliE2E, DumpReferenceWritesGrid) {
  const fs::path out = kWorkDir / "ref.csv";
  ASSERT_EQ(run_cli("--problem P4 --n 5 --s 4 --dump-reference " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_EQ(content.substr(0, content.find('\n')), "x,y,u");
}

TEST_F(CliE2E, JsonFormatCarriesCoefficients) {
  const fs::path out = kWorkDir / "p1.json";
  ASSERT_EQ(run_cli("--problem P1 --n 9 --format json --out " + out.string()), 0);
  const std::string content = slurp(out);
  EXPECT_NE(content.find("\"coefficients\""), std::string::npos);
  EXPECT_NE(content.find("\"multipliers\""), std::string::npos);
}
