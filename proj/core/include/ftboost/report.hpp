#pragma once

#include "ftboost/metrics.hpp"
#include "ftboost/scenario.hpp"
#include "ftboost/simulate.hpp"
#include "ftboost/thermal.hpp"

#include <string>

namespace ftboost {

[[nodiscard]] std::string format_metrics(const ScenarioConfig& config, const SimulationResult& result);

/// Side-by-side transition metrics, plain text.
[[nodiscard]] std::string format_comparison(const ComparisonReport& report);
[[nodiscard]] std::string format_comparison_csv(const ComparisonReport& report);

[[nodiscard]] std::string format_thermal(const ThermalReport& report);

/// Builds the thermal inputs from a scenario's converter and thermal section.
[[nodiscard]] OperatingPoint thermal_operating_point(const ScenarioConfig& config);
[[nodiscard]] LossModel thermal_loss_model(const ScenarioConfig& config);
[[nodiscard]] ThermalNetwork thermal_network(const ScenarioConfig& config);

struct SwitchCurrents {
    double i_rms = 0.0;
    double i_avg = 0.0;
    double duty = 0.0;
};

/// Runs the scenario and measures the main-switch current of `phase` over
/// the final kSummaryPeriods switching periods.
[[nodiscard]] SwitchCurrents measure_switch_currents(const ScenarioConfig& config, std::size_t phase = 0);

}  // namespace ftboost
