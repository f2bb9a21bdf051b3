#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kCli = FTBOOST_TEST_CLI_PATH;
const fs::path kScenarios = FTBOOST_TEST_SCENARIO_DIR;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const std::string cmd = "\"" + kCli.string() + "\" " + args + " > \"" + out.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ftboost_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

const char* kShort = R"({
  "schema_version": 1,
  "name": "tiny",
  "converter": {"v_in": 50, "v_out": 200, "p_out": 200},
  "phases": [{"arrangement": {"type": "redundant"}}],
  "control": {"mode": "cascade"},
  "events": [{"type": "fault", "time": 0.004, "target": "main", "kind": "short"}],
  "simulation": {"t_end": 0.008, "decimation": 4, "start": "steady"}
})";

}  // namespace

TEST_F(Cli, RunWritesOutputs) {
    const fs::path scenario = write("tiny.json", kShort);
    const CliResult r = run_cli("run \"" + scenario.string() + "\" --out \"" + (dir_ / "out").string() + "\"", dir_);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(fs::exists(dir_ / "out" / "waveforms.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "out" / "metrics.txt"));
    EXPECT_NE(r.out.find("clearing time"), std::string::npos);
}

TEST_F(Cli, ValidateBadFieldExitsOneWithoutFiles) {
    std::string text = kShort;
    text.replace(text.find("\"redundant\""), 11, "\"redundant\", \"t_d\": 0");
    const fs::path scenario = write("bad.json", text);
    const CliResult r = run_cli("validate \"" + scenario.string() + "\"", dir_);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("t_d"), std::string::npos);

    const CliResult run = run_cli("run \"" + scenario.string() + "\" --out \"" + (dir_ / "out").string() + "\"", dir_);
    EXPECT_EQ(run.code, 1);
    EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, SyntaxAndUsageErrorsExitOne) {
    const fs::path scenario = write("broken.json", "{ not json");
    EXPECT_EQ(run_cli("validate \"" + scenario.string() + "\"", dir_).code, 1);
    EXPECT_EQ(run_cli("validate \"" + (dir_ / "missing.json").string() + "\"", dir_).code, 1);
    EXPECT_EQ(run_cli("frobnicate", dir_).code, 1);
    EXPECT_EQ(run_cli("", dir_).code, 1);
}

TEST_F(Cli, UnwritableOutputExitsTwo) {
    const fs::path scenario = write("tiny.json", kShort);
    write("blocker", "x");
    const CliResult r = run_cli("run \"" + scenario.string() + "\" --out \"" + (dir_ / "blocker" / "sub").string() + "\"", dir_);
    EXPECT_EQ(r.code, 2) << r.out;
}

TEST_F(Cli, ValidateEveryBundledScenario) {
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".json") continue;
        EXPECT_EQ(run_cli("validate \"" + entry.path().string() + "\"", dir_).code, 0) << entry.path();
    }
}

TEST_F(Cli, CompareBundledPair) {
    const CliResult r = run_cli("compare \"" + (kScenarios / "compare-cascade.json").string() + "\" \"" +
                              (kScenarios / "compare-baseline.json").string() + "\" --csv",
                          dir_);
    ASSERT_EQ(r.code, 0) << r.out;
    std::istringstream in(r.out);
    bool found = false;
    for (std::string line; std::getline(in, line);) {
        if (line.find("reserve overcurrent stress") == std::string::npos) continue;
        const auto c1 = line.find(',', line.find(',') + 1);
        const auto c2 = line.find(',', c1 + 1);
        const double cascade = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double baseline = std::stod(line.substr(c2 + 1));
        EXPECT_LT(cascade, baseline);
        found = true;
    }
    EXPECT_TRUE(found) << r.out;
}

TEST_F(Cli, CompareRefusesDifferentPlants) {
    const CliResult r = run_cli("compare \"" + (kScenarios / "compare-cascade.json").string() + "\" \"" +
                              (kScenarios / "interleaved-3phase.json").string() + "\"",
                          dir_);
    EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, ThermalReportFlagsDiscrepancy) {
    const CliResult r = run_cli("thermal \"" + (kScenarios / "thermal-100w.json").string() + "\"", dir_);
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("series"), std::string::npos);
    EXPECT_NE(r.out.find("discrepancy"), std::string::npos);
}
