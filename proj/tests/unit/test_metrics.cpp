#include "ftboost/errors.hpp"
#include "ftboost/metrics.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ftboost;
using ftboost::test::reference_config;

namespace {

StepSample sample_at(std::size_t step, double dt, double v_c, double i_reserve = 0.0, bool main_blown = false) {
    StepSample s;
    s.step = step;
    s.t = static_cast<double>(step) * dt;
    s.v_c = v_c;
    s.v_ref = 200.0;
    s.phases.resize(1);
    s.phases[0].i_reserve = i_reserve;
    s.phases[0].fuse_main_blown = main_blown;
    return s;
}

ScenarioConfig with_fault(FaultKind kind, double time = 1e-3) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{time, 0, FaultTarget::MainSwitch, kind}};
    return cfg;
}

}  // namespace

TEST(Metrics, NoFaultsNoMetrics) {
    const ScenarioConfig cfg = reference_config(0.01);
    MetricsAccumulator acc(cfg);
    acc.observe(sample_at(0, cfg.sim.dt, 200.0), cfg.sim.dt);
    EXPECT_TRUE(acc.finish().empty());
}

TEST(Metrics, OpenClearsOnFirstReserveCurrent) {
    const ScenarioConfig cfg = with_fault(FaultKind::Open);
    const double dt = cfg.sim.dt;
    const std::size_t onset = event_step(1e-3, dt);
    MetricsAccumulator acc(cfg);
    for (std::size_t k = 0; k < onset + 10; ++k) acc.observe(sample_at(k, dt, 200.0, k >= onset + 3 ? 4.0 : 0.0), dt);
    const auto m = acc.finish();
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].status, ClearingStatus::Cleared);
    EXPECT_NEAR(m[0].clearing_time, 3 * dt, 1e-12);
    EXPECT_DOUBLE_EQ(m[0].reserve_peak_current, 4.0);
    EXPECT_EQ(m[0].reserve_overcurrent_stress, 0.0);
    ASSERT_TRUE(m[0].settling_time.has_value());
    EXPECT_EQ(*m[0].settling_time, 0.0);
}

TEST(Metrics, UnresolvedFaultIsFlaggedNotZero) {
    const ScenarioConfig cfg = with_fault(FaultKind::Short);
    const double dt = cfg.sim.dt;
    MetricsAccumulator acc(cfg);
    for (std::size_t k = 0; k < 8000; ++k) acc.observe(sample_at(k, dt, 200.0), dt);
    const auto m = acc.finish();
    EXPECT_EQ(m[0].status, ClearingStatus::Unresolved);
}

TEST(Metrics, StressIntegratesExcessOverThreshold) {
    const ScenarioConfig cfg = with_fault(FaultKind::Short);
    const double dt = cfg.sim.dt;
    const std::size_t onset = event_step(1e-3, dt);
    MetricsAccumulator acc(cfg);
    for (std::size_t k = onset; k < onset + 100; ++k) acc.observe(sample_at(k, dt, 200.0, 10.0, k >= onset + 20), dt);
    const auto m = acc.finish();
    EXPECT_EQ(m[0].status, ClearingStatus::Cleared);
    EXPECT_NEAR(m[0].clearing_time, 20 * dt, 1e-12);
    EXPECT_NEAR(m[0].reserve_overcurrent_stress, 100 * dt * (10.0 - 6.0), 1e-12);
    EXPECT_DOUBLE_EQ(m[0].reserve_peak_current, 10.0);
}

TEST(Metrics, SettlingAndExtremes) {
    const ScenarioConfig cfg = with_fault(FaultKind::Short);
    const double dt = cfg.sim.dt;
    const std::size_t onset = event_step(1e-3, dt);
    MetricsAccumulator acc(cfg);
    for (std::size_t k = onset; k < onset + 100; ++k) {
        const double v = k < onset + 40 ? 190.0 : 199.0;
        acc.observe(sample_at(k, dt, v), dt);
    }
    const auto m = acc.finish();
    EXPECT_DOUBLE_EQ(m[0].v_out_min, 190.0);
    EXPECT_DOUBLE_EQ(m[0].v_out_max, 199.0);
    ASSERT_TRUE(m[0].settling_time.has_value());
    EXPECT_NEAR(*m[0].settling_time, 40 * dt + (static_cast<double>(onset) * dt - 1e-3), 1e-12);
}

TEST(Metrics, NeverSettledIsEmpty) {
    const ScenarioConfig cfg = with_fault(FaultKind::Short);
    const double dt = cfg.sim.dt;
    const std::size_t onset = event_step(1e-3, dt);
    MetricsAccumulator acc(cfg);
    for (std::size_t k = onset; k < onset + 10; ++k) acc.observe(sample_at(k, dt, 150.0), dt);
    EXPECT_FALSE(acc.finish()[0].settling_time.has_value());
}

TEST(Metrics, EachFaultOwnsItsWindow) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{2e-3, 0, FaultTarget::ReserveSwitch, FaultKind::Short},
                  FaultEvent{1e-3, 0, FaultTarget::MainSwitch, FaultKind::Open}};
    const double dt = cfg.sim.dt;
    const std::size_t second = event_step(2e-3, dt);
    MetricsAccumulator acc(cfg);
    for (std::size_t k = 0; k < second + 10; ++k) acc.observe(sample_at(k, dt, 200.0, k >= second ? 9.0 : 1.0), dt);
    const auto m = acc.finish();
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].fault.time, 1e-3);
    EXPECT_DOUBLE_EQ(m[0].reserve_peak_current, 1.0);
    EXPECT_DOUBLE_EQ(m[1].reserve_peak_current, 9.0);
}

TEST(Metrics, ReserveOpenIsNotApplicable) {
    ScenarioConfig cfg = reference_config(0.01);
    cfg.faults = {FaultEvent{1e-3, 0, FaultTarget::ReserveSwitch, FaultKind::Open}};
    MetricsAccumulator acc(cfg);
    EXPECT_EQ(acc.finish()[0].status, ClearingStatus::NotApplicable);
}

TEST(CompareRuns, RefusesDifferentPlants) {
    ScenarioConfig a = reference_config(0.01);
    ScenarioConfig b = a;
    b.converter.c_out = 220e-6;
    EXPECT_THROW((void)compare_runs(a, b), ConfigError);
    b = a;
    b.faults = {FaultEvent{1e-3, 0, FaultTarget::MainSwitch, FaultKind::Open}};
    EXPECT_THROW((void)compare_runs(a, b), ConfigError);
    b = a;
    b.overcurrent_threshold = 7.0;
    EXPECT_THROW((void)compare_runs(a, b), ConfigError);
}

TEST(CompareRuns, IdenticalConfigsGiveIdenticalColumns) {
    ScenarioConfig a = reference_config(0.02);
    a.faults = {FaultEvent{0.01, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    const ComparisonReport r = compare_runs(a, a);
    ASSERT_EQ(r.a.size(), 1u);
    ASSERT_EQ(r.b.size(), 1u);
    EXPECT_EQ(r.a[0].clearing_time, r.b[0].clearing_time);
    EXPECT_EQ(r.a[0].reserve_peak_current, r.b[0].reserve_peak_current);
    EXPECT_EQ(r.a[0].reserve_overcurrent_stress, r.b[0].reserve_overcurrent_stress);
    EXPECT_EQ(r.a[0].v_out_min, r.b[0].v_out_min);
    EXPECT_EQ(r.summary_a.mean_v_c, r.summary_b.mean_v_c);
}
