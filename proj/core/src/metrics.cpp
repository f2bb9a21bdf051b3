#include "ftboost/metrics.hpp"

#include "ftboost/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace ftboost {

namespace {

constexpr double kSettlingBand = 0.02;

}  // namespace

MetricsAccumulator::MetricsAccumulator(const ScenarioConfig& config) : threshold_(config.overcurrent_threshold) {
    std::vector<FaultEvent> faults = config.faults;
    std::stable_sort(faults.begin(), faults.end(),
                     [](const FaultEvent& a, const FaultEvent& b) { return a.time < b.time; });
    const std::size_t end = config.total_steps() + 1;
    for (std::size_t i = 0; i < faults.size(); ++i) {
        Track tr;
        tr.m.fault = faults[i];
        tr.onset_step = event_step(faults[i].time, config.sim.dt);
        tr.end_step = i + 1 < faults.size() ? event_step(faults[i + 1].time, config.sim.dt) : end;
        tr.end_step = std::max(tr.end_step, tr.onset_step);
        const auto& arrangement = config.converter.phases.at(faults[i].phase_index).arrangement;
        tr.redundant = std::holds_alternative<RedundantCell>(arrangement);
        const bool reserve_open =
            faults[i].target == FaultTarget::ReserveSwitch && faults[i].kind == FaultKind::Open;
        tr.m.status = (tr.redundant && !reserve_open) ? ClearingStatus::Unresolved : ClearingStatus::NotApplicable;
        if (!tr.redundant && faults[i].kind == FaultKind::Short) tr.m.status = ClearingStatus::Unresolved;
        tr.m.v_out_min = std::numeric_limits<double>::infinity();
        tr.m.v_out_max = -std::numeric_limits<double>::infinity();
        tracks_.push_back(tr);
    }
}

void MetricsAccumulator::observe(const StepSample& sample, double interval) {
    for (Track& tr : tracks_) {
        // Cleared/settled bookkeeping only inside the fault's own window.
        if (sample.step < tr.onset_step || sample.step >= tr.end_step) continue;
        const PhaseSample& ph = sample.phases[tr.m.fault.phase_index];
        TransitionMetrics& m = tr.m;
        tr.started = true;
        tr.last_interval = interval;

        if (m.status == ClearingStatus::Unresolved && tr.redundant) {
            bool cleared = false;
            if (m.fault.kind == FaultKind::Open) {
                cleared = ph.i_reserve > 0.0;
            } else {
                cleared = m.fault.target == FaultTarget::MainSwitch ? ph.fuse_main_blown : ph.fuse_reserve_blown;
            }
            if (cleared) {
                m.status = ClearingStatus::Cleared;
                m.clearing_time = std::max(0.0, sample.t - m.fault.time);
            }
        }

        m.reserve_peak_current = std::max(m.reserve_peak_current, ph.i_reserve);
        m.reserve_overcurrent_stress += std::max(0.0, ph.i_reserve - threshold_) * interval;
        m.v_out_min = std::min(m.v_out_min, sample.v_c);
        m.v_out_max = std::max(m.v_out_max, sample.v_c);

        const bool out = std::abs(sample.v_c - sample.v_ref) > kSettlingBand * sample.v_ref;
        tr.last_out_of_band = out;
        if (out) tr.last_out_time = sample.t;
    }
}

std::vector<TransitionMetrics> MetricsAccumulator::finish() const {
    std::vector<TransitionMetrics> out;
    out.reserve(tracks_.size());
    for (const Track& tr : tracks_) {
        TransitionMetrics m = tr.m;
        if (!tr.started) {
            m.v_out_min = m.v_out_max = 0.0;
            m.settling_time.reset();
        } else if (tr.last_out_of_band) {
            m.settling_time.reset();
        } else if (tr.last_out_time < 0.0) {
            m.settling_time = 0.0;
        } else {
            m.settling_time = std::max(0.0, tr.last_out_time + tr.last_interval - m.fault.time);
        }
        out.push_back(m);
    }
    return out;
}

std::vector<TransitionMetrics> extract_metrics(const WaveformLog& log, const ScenarioConfig& config) {
    MetricsAccumulator acc(config);
    const double interval = log.sample_interval();
    for (const StepSample& s : log.samples) acc.observe(s, interval);
    return acc.finish();
}

ComparisonReport compare_runs(const ScenarioConfig& a, const ScenarioConfig& b) {
    if (!(a.converter == b.converter))
        throw ConfigError(ConfigError::Category::Physics, "converter",
                          "compared scenarios must share plant parameters");
    if (a.faults != b.faults || a.steps != b.steps)
        throw ConfigError(ConfigError::Category::Physics, "events", "compared scenarios must share the event schedule");
    if (a.overcurrent_threshold != b.overcurrent_threshold)
        throw ConfigError(ConfigError::Category::Physics, "control.i_max",
                          "compared scenarios must share the overcurrent-stress threshold");
    validate(a);
    validate(b);

    SimulateOptions opts;
    opts.keep_log = false;
    auto future_b = std::async(std::launch::async, [&] { return simulate(b, opts); });
    SimulationResult ra = simulate(a, opts);
    SimulationResult rb = future_b.get();

    ComparisonReport report;
    report.name_a = a.name;
    report.name_b = b.name;
    report.a = std::move(ra.metrics);
    report.b = std::move(rb.metrics);
    report.summary_a = std::move(ra.summary);
    report.summary_b = std::move(rb.summary);
    return report;
}

}  // namespace ftboost
