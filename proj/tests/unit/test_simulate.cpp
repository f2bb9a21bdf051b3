#include "ftboost/errors.hpp"
#include "ftboost/metrics.hpp"
#include "ftboost/simulate.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <utility>

using namespace ftboost;
using ftboost::test::ideal_open_loop;
using ftboost::test::reference_config;

TEST(Simulate, OpenLoopIdealHoldsOperatingPoint) {
    const SimulationResult r = simulate(ideal_open_loop(0.75));
    EXPECT_NEAR(r.summary.mean_v_c, 200.0, 0.5);
    EXPECT_NEAR(r.summary.mean_i_l[0], 4.0, 0.02);
}

TEST(Simulate, RippleMatchesVoltSecondOracle) {
    const ScenarioConfig cfg = ideal_open_loop(0.75);
    double lo = 1e9, hi = -1e9;
    const double from = cfg.sim.t_end - 10 * cfg.converter.t_sw();
    SimulateOptions opts;
    opts.keep_log = false;
    opts.observer = [&](const StepSample& s) {
        if (s.t < from) return;
        lo = std::min(lo, s.phases[0].i_l);
        hi = std::max(hi, s.phases[0].i_l);
    };
    (void)simulate(cfg, opts);
    const double oracle = 50.0 * 0.75 / (1.8e-3 * 20e3);
    EXPECT_NEAR(hi - lo, oracle, 0.05 * oracle);
}

TEST(Simulate, GateEdgeSnapsToNearestStep) {
    for (auto [duty, on_steps] : {std::pair{0.7504, 150}, std::pair{0.7524, 150}, std::pair{0.7526, 151}}) {
        ScenarioConfig cfg = ideal_open_loop(duty, 0.001);
        int on = 0;
        SimulateOptions opts;
        opts.keep_log = false;
        opts.observer = [&](const StepSample& s) {
            if (s.step >= 200 && s.step < 400 && s.phases[0].gate_main) ++on;
        };
        (void)simulate(cfg, opts);
        EXPECT_EQ(on, on_steps) << duty;
    }
}

TEST(Simulate, LogRowsFollowDecimation) {
    ScenarioConfig cfg = reference_config(0.001);
    cfg.sim.decimation = 10;
    const SimulationResult r = simulate(cfg);
    EXPECT_EQ(r.log.samples.size(), cfg.total_steps() / 10 + 1);
    for (std::size_t k = 1; k < r.log.samples.size(); ++k) ASSERT_GT(r.log.samples[k].t, r.log.samples[k - 1].t);
    cfg.sim.decimation = 7;
    EXPECT_EQ(simulate(cfg).log.samples.size(), cfg.total_steps() / 7 + 1);
}

TEST(Simulate, KeepLogOffStillReportsMetrics) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{0.005 + 20e-6, 0, FaultTarget::MainSwitch, FaultKind::Open}};
    SimulateOptions opts;
    opts.keep_log = false;
    const SimulationResult r = simulate(cfg, opts);
    EXPECT_TRUE(r.log.samples.empty());
    ASSERT_EQ(r.metrics.size(), 1u);
    EXPECT_EQ(r.metrics[0].status, ClearingStatus::Cleared);
}

TEST(Simulate, NoFaultKeepsReserveIdle) {
    ScenarioConfig cfg = reference_config(0.02);
    cfg.steps = {StepEvent{0.005, LoadStep{160.0}}, StepEvent{0.012, ReferenceStep{180.0}}};
    double worst = 0.0;
    SimulateOptions opts;
    opts.keep_log = false;
    opts.observer = [&](const StepSample& s) { worst = std::max(worst, std::abs(s.phases[0].i_reserve)); };
    const SimulationResult r = simulate(cfg, opts);
    EXPECT_EQ(worst, 0.0);
    EXPECT_TRUE(r.metrics.empty());
}

TEST(Simulate, OpenFaultAfterDelayClearsWithinOneStep) {
    ScenarioConfig cfg = reference_config(0.02);
    const double t_sw = cfg.converter.t_sw();
    cfg.faults = {FaultEvent{200 * t_sw + 20e-6, 0, FaultTarget::MainSwitch, FaultKind::Open}};
    const SimulationResult r = simulate(cfg);
    ASSERT_EQ(r.metrics.size(), 1u);
    EXPECT_EQ(r.metrics[0].status, ClearingStatus::Cleared);
    EXPECT_LE(r.metrics[0].clearing_time, cfg.sim.dt);
}

TEST(Simulate, OpenFaultBeforeDelayClearsByDelay) {
    ScenarioConfig cfg = reference_config(0.02);
    const double t_sw = cfg.converter.t_sw();
    cfg.faults = {FaultEvent{200 * t_sw + 0.5e-6, 0, FaultTarget::MainSwitch, FaultKind::Open}};
    const SimulationResult r = simulate(cfg);
    EXPECT_EQ(r.metrics[0].status, ClearingStatus::Cleared);
    EXPECT_LE(r.metrics[0].clearing_time, 2e-6);
    EXPECT_GT(r.metrics[0].clearing_time, cfg.sim.dt);
}

TEST(Simulate, LogMatchesFullResolutionMetrics) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{0.005, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    const SimulationResult r = simulate(cfg);
    const auto from_log = extract_metrics(r.log, cfg);
    ASSERT_EQ(from_log.size(), 1u);
    EXPECT_EQ(from_log[0].status, r.metrics[0].status);
    EXPECT_EQ(from_log[0].clearing_time, r.metrics[0].clearing_time);
    EXPECT_EQ(from_log[0].reserve_peak_current, r.metrics[0].reserve_peak_current);
    EXPECT_NEAR(from_log[0].reserve_overcurrent_stress, r.metrics[0].reserve_overcurrent_stress, 1e-12);
}

TEST(Simulate, ShortFaultBlowsMainFuseAndKeepsRunning) {
    ScenarioConfig cfg = reference_config(0.04);
    cfg.faults = {FaultEvent{0.01, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    const SimulationResult r = simulate(cfg);
    EXPECT_EQ(r.metrics[0].status, ClearingStatus::Cleared);
    EXPECT_LT(r.metrics[0].clearing_time, 20 * cfg.converter.t_sw());
    EXPECT_NEAR(r.summary.mean_v_c, 200.0, 4.0);
    EXPECT_TRUE(r.log.samples.back().phases[0].fuse_main_blown);
    EXPECT_FALSE(r.log.samples.back().phases[0].fuse_reserve_blown);
}

TEST(Simulate, ColdStartRegulates) {
    ScenarioConfig cfg = reference_config(0.12);
    cfg.sim.start = StartMode::Cold;
    SimulateOptions opts;
    opts.keep_log = false;
    const SimulationResult r = simulate(cfg, opts);
    EXPECT_NEAR(r.summary.mean_v_c, 200.0, 4.0);
}

TEST(Simulate, BitIdenticalReruns) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{0.004, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    const SimulationResult a = simulate(cfg);
    const SimulationResult b = simulate(cfg);
    ASSERT_EQ(a.log.samples.size(), b.log.samples.size());
    for (std::size_t k = 0; k < a.log.samples.size(); ++k) {
        ASSERT_EQ(a.log.samples[k].v_c, b.log.samples[k].v_c);
        ASSERT_EQ(a.log.samples[k].phases[0].i_l, b.log.samples[k].phases[0].i_l);
    }
}

TEST(Simulate, RejectsInvalidConfigBeforeRunning) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.sim.dt = 3e-7;
    EXPECT_THROW((void)simulate(cfg), ConfigError);
}

TEST(Simulate, InterleavedCarriersAreShifted) {
    ScenarioConfig cfg = reference_config(0.005, 3);
    const std::size_t spp = cfg.steps_per_period();
    const SimulationResult r = simulate(cfg);
    // first rising gate edge of each phase sits at its carrier offset
    for (std::size_t p = 0; p < 3; ++p) {
        std::size_t first = 0;
        for (std::size_t k = 1; k < r.log.samples.size(); ++k) {
            if (r.log.samples[k].phases[p].gate_main && !r.log.samples[k - 1].phases[p].gate_main) {
                first = k;
                break;
            }
        }
        EXPECT_EQ(first % spp, (p * spp / 3) % spp) << "phase " << p;
    }
}
