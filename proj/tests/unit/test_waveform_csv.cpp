#include "ftboost/simulate.hpp"
#include "ftboost/waveform_csv.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ftboost;
using ftboost::test::reference_config;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string csv_of(const WaveformLog& log) {
    std::ostringstream os;
    write_waveforms(log, os);
    return os.str();
}

}  // namespace

TEST(WaveformCsv, GoldenHeader) {
    EXPECT_EQ(waveform_header(1),
              "t,i_l_0,v_c,gate_main_0,gate_reserve_0,i_main_0,i_reserve_0,i_out_diode_0,fuse_main_acc_0,"
              "fuse_main_blown_0,fuse_reserve_acc_0,fuse_reserve_blown_0,duty_0,mode_0");
    const std::string h2 = waveform_header(2);
    EXPECT_EQ(h2.rfind("t,i_l_0,i_l_1,v_c,gate_main_0,", 0), 0u);
    EXPECT_NE(h2.find(",duty_0,mode_0,gate_main_1,"), std::string::npos);
    EXPECT_EQ(h2.substr(h2.size() - 14), ",duty_1,mode_1");
}

TEST(WaveformCsv, RowsAndFormatting) {
    ScenarioConfig cfg = reference_config(0.0005);
    cfg.sim.decimation = 10;
    const SimulationResult r = simulate(cfg);
    const std::string text = csv_of(r.log);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
    const auto rows = lines(text);
    ASSERT_EQ(rows.size(), cfg.total_steps() / 10 + 2);

    const std::size_t columns = std::count(rows[0].begin(), rows[0].end(), ',');
    double prev = -1.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        ASSERT_EQ(static_cast<std::size_t>(std::count(rows[k].begin(), rows[k].end(), ',')), columns);
        double t = 0.0;
        const std::string& row = rows[k];
        const auto res = std::from_chars(row.data(), row.data() + row.find(','), t);
        ASSERT_EQ(res.ec, std::errc{});
        ASSERT_GT(t, prev);
        prev = t;
    }
}

TEST(WaveformCsv, ValuesRoundTrip) {
    WaveformLog log;
    log.dt = 1e-7;
    log.phase_count = 1;
    StepSample s;
    s.t = 0.1 + 0.2;
    s.v_c = 199.99787000000001;
    PhaseSample p;
    p.i_l = 1.0 / 3.0;
    p.gate_main = true;
    p.fuse_main_blown = true;
    p.mode = ModeKind::RailShorted;
    s.phases.push_back(p);
    log.samples.push_back(s);
    const auto row = lines(csv_of(log)).at(1);
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 14u);
    EXPECT_EQ(std::stod(cells[0]), 0.1 + 0.2);
    EXPECT_EQ(std::stod(cells[1]), 1.0 / 3.0);
    EXPECT_EQ(std::stod(cells[2]), s.v_c);
    EXPECT_EQ(cells[3], "1");
    EXPECT_EQ(cells[4], "0");
    EXPECT_EQ(cells[9], "1");
    EXPECT_EQ(cells[13], "3");
}

TEST(WaveformCsv, RerunIsByteIdentical) {
    ScenarioConfig cfg = reference_config(0.005);
    cfg.faults = {FaultEvent{0.002, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    EXPECT_EQ(csv_of(simulate(cfg).log), csv_of(simulate(cfg).log));
}

TEST(WaveformCsv, FileOutputAndErrors) {
    ScenarioConfig cfg = reference_config(0.0002);
    const SimulationResult r = simulate(cfg);
    const auto path = std::filesystem::temp_directory_path() / "ftboost_csv_test.csv";
    write_waveforms(r.log, path);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), csv_of(r.log));
    std::filesystem::remove(path);

    const std::filesystem::path bad = "/nonexistent-dir/out.csv";
    try {
        write_waveforms(r.log, bad);
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
    }
}
