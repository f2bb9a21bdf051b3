#pragma once

// Run descriptions (plant, controller, event schedule, simulation settings),
// the event scheduler, and fault-transition metrics.

#include "ftboost/circuit.hpp"
#include "ftboost/control.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ftboost {

enum class FaultTarget { MainSwitch, ReserveSwitch };
enum class FaultKind { Open, Short };

struct FaultEvent {
    double time = 0.0;
    std::size_t phase_index = 0;
    FaultTarget target = FaultTarget::MainSwitch;
    FaultKind kind = FaultKind::Open;

    bool operator==(const FaultEvent&) const = default;
};

struct LoadStep {
    double r_load = 0.0;
    bool operator==(const LoadStep&) const = default;
};

struct ReferenceStep {
    double v_ref = 0.0;
    bool operator==(const ReferenceStep&) const = default;
};

struct StepEvent {
    double time = 0.0;
    std::variant<LoadStep, ReferenceStep> change;

    bool operator==(const StepEvent&) const = default;
};

struct CascadeMode {
    CascadeController controller;
};

struct BaselineMode {
    BaselineController controller;
};

struct OpenLoopFixedDuty {
    double duty = 0.75;
};

using ControlMode = std::variant<CascadeMode, BaselineMode, OpenLoopFixedDuty>;

enum class StartMode {
    Cold,    // v_c = initial_v_c (default v_in), i_l = 0, controllers reset
    Steady,  // v_c = v_ref, i_l at nominal load, controller integrators preloaded
};

struct SimulationSettings {
    double dt = 2.5e-7;
    double t_end = 0.4;
    std::size_t decimation = 1;
    StartMode start = StartMode::Cold;
    std::optional<double> initial_v_c;
};

struct ThermalSettings {
    enum class Model { Resistive, FixedDrop, Hybrid };
    Model model = Model::Resistive;
    double r_on = 0.1;
    double v_drop = 0.7;
    double e_on = 0.0;
    double e_off = 0.0;
    double r_th_j_hs = 1.5;
    double r_th_hs_amb = 2.0;
    double t_ambient = 25.0;
    double p_out = 100.0;
    double v_out = 200.0;
};

struct ScenarioConfig {
    std::string name;
    ConverterParams converter;
    double v_ref = 200.0;
    double p_out = 200.0;
    ControlMode control = CascadeMode{};
    /// Threshold of the reserve overcurrent-stress integral; the cascade's
    /// i_max unless the control section provides one.
    double overcurrent_threshold = 6.0;
    std::vector<FaultEvent> faults;
    std::vector<StepEvent> steps;
    SimulationSettings sim;
    std::optional<ThermalSettings> thermal;

    [[nodiscard]] std::size_t steps_per_period() const;
    [[nodiscard]] std::size_t total_steps() const;
};

/// Cross-field physics checks: positive values, cell constraints, duty bounds
/// against t_d, dt dividing t_sw, events inside [0, t_end) and at most one
/// fault per device. Throws ConfigError.
void validate(const ScenarioConfig& config);

/// First step index whose time is at or after `time`.
[[nodiscard]] std::size_t event_step(double time, double dt) noexcept;

/// Sorted fault/step schedule applied on the step grid. Each event fires once,
/// at the first step whose time is >= event.time.
class EventSchedule {
public:
    struct Applied {
        std::vector<FaultEvent> faults;
        std::vector<StepEvent> steps;
        [[nodiscard]] bool empty() const noexcept { return faults.empty() && steps.empty(); }
    };

    EventSchedule(std::vector<FaultEvent> faults, std::vector<StepEvent> steps, double dt);

    /// Applies everything due at `step` to the plant. Throws ConfigError when a
    /// fault targets an already-faulted device or a device the arrangement lacks.
    Applied apply_due(std::size_t step, ConverterParams& plant, double& v_ref);

    [[nodiscard]] bool exhausted() const noexcept;

private:
    struct Pending {
        std::size_t step;
        std::variant<FaultEvent, StepEvent> event;
    };
    std::vector<Pending> pending_;
    std::size_t cursor_ = 0;
};

/// Injects one fault into the device it targets.
void inject_device_fault(SwitchArrangement& arrangement, const FaultEvent& fault);

/// Time-ordered merge of both event lists as applied at time `now`
/// (everything with time <= now), for callers outside the step loop.
void apply_schedule(const std::vector<FaultEvent>& faults, const std::vector<StepEvent>& steps, double now,
                    ConverterParams& plant, double& v_ref);

enum class ClearingStatus { Cleared, Unresolved, NotApplicable };

struct TransitionMetrics {
    FaultEvent fault;
    ClearingStatus status = ClearingStatus::Unresolved;
    double clearing_time = 0.0;         // s, valid when Cleared
    double reserve_peak_current = 0.0;  // A
    double reserve_overcurrent_stress = 0.0;  // A s
    double v_out_min = 0.0;
    double v_out_max = 0.0;
    std::optional<double> settling_time;  // s from onset; nullopt if never settled
};

}  // namespace ftboost
