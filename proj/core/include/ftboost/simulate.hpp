#pragma once

#include "ftboost/scenario.hpp"
#include "ftboost/waveform.hpp"

#include <functional>
#include <vector>

namespace ftboost {

/// Called for every integration step (full resolution), independent of the
/// log decimation.
using StepObserver = std::function<void(const StepSample&)>;

struct SimulateOptions {
    StepObserver observer;
    bool keep_log = true;
};

/// Means over the last `summary_periods` switching periods of the run.
struct RunSummary {
    double window_start = 0.0;
    double window_end = 0.0;
    double mean_v_c = 0.0;
    std::vector<double> mean_i_l;
};

struct SimulationResult {
    WaveformLog log;
    std::vector<TransitionMetrics> metrics;  // full-resolution, one per fault
    RunSummary summary;
};

inline constexpr std::size_t kSummaryPeriods = 50;

/// Fixed-step simulation loop. Per step: apply due events; on a switching
/// period boundary run the controller; latch each phase's duty at its carrier
/// period start; compute gates; resolve branch paths; record the sample; heat
/// the fuses; integrate. Identical configs give bit-identical results.
///
/// Throws ConfigError for invalid configs and NumericalBlowup on divergence.
[[nodiscard]] SimulationResult simulate(const ScenarioConfig& config, const SimulateOptions& options = {});

}  // namespace ftboost
