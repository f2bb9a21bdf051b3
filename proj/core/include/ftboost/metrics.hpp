#pragma once

#include "ftboost/scenario.hpp"
#include "ftboost/simulate.hpp"
#include "ftboost/waveform.hpp"

#include <string>
#include <vector>

namespace ftboost {

/// Streaming fault-transition statistics. Each fault owns the window from its
/// onset to the next fault's onset (or the end of the run).
///
/// Clearing time: open main-switch fault -> first sample with reserve current;
/// short fault -> first sample showing that switch's fuse blown. Open faults
/// on the reserve switch, and faults in cells without the matching hardware,
/// are NotApplicable or Unresolved rather than zero.
class MetricsAccumulator {
public:
    explicit MetricsAccumulator(const ScenarioConfig& config);

    /// `interval` is the time the sample represents (dt, or dt * decimation).
    void observe(const StepSample& sample, double interval);

    [[nodiscard]] std::vector<TransitionMetrics> finish() const;

private:
    struct Track {
        TransitionMetrics m;
        std::size_t onset_step = 0;
        std::size_t end_step = 0;  // exclusive
        bool redundant = false;
        bool started = false;
        bool last_out_of_band = false;
        double last_out_time = -1.0;
        double last_interval = 0.0;
    };
    std::vector<Track> tracks_;
    double threshold_;
};

[[nodiscard]] std::vector<TransitionMetrics> extract_metrics(const WaveformLog& log, const ScenarioConfig& config);

struct ComparisonReport {
    std::string name_a;
    std::string name_b;
    std::vector<TransitionMetrics> a;
    std::vector<TransitionMetrics> b;
    RunSummary summary_a;
    RunSummary summary_b;
};

/// Runs both configs (concurrently) and pairs their metrics. Throws
/// ConfigError when plant parameters, event schedules or stress thresholds
/// differ.
[[nodiscard]] ComparisonReport compare_runs(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace ftboost
