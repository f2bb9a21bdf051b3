#pragma once

// Duty-cycle controllers: the voltage -> current -> duty PI cascade whose
// current limit narrows the duty during a short, and a voltage-mode baseline
// that swaps to the reserve switch a fixed detection delay after a fault.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ftboost {

/// PI with conditional-integration anti-windup. The integrator only advances
/// when the resulting output stays inside [out_min, out_max], and ki * integ
/// is itself kept inside the bounds.
struct PiController {
    double kp = 0.0;
    double ki = 0.0;
    double integ = 0.0;
    double out_min = 0.0;
    double out_max = 1.0;

    /// Unclamped output for `error` with the current integrator.
    [[nodiscard]] double raw_output(double error) const noexcept { return kp * error + ki * integ; }

    /// Presets the integrator so that the output equals `output` at zero error.
    void preload(double output) noexcept;
};

[[nodiscard]] double pi_step(PiController& pi, double error, double dt) noexcept;

struct CascadeController {
    PiController v_loop;         // output: per-phase current reference, [0, i_max]
    PiController i_loop;         // output: duty, [d_min, d_max]
    double i_max = 6.0;          // A, per phase
    std::size_t sensor_window = 200;

    [[nodiscard]] double d_min() const noexcept { return i_loop.out_min; }
    [[nodiscard]] double d_max() const noexcept { return i_loop.out_max; }
};

/// Builds a cascade with the loop bounds tied to i_max / [d_min, d_max].
[[nodiscard]] CascadeController make_cascade(double kp_v, double ki_v, double kp_i, double ki_i, double i_max,
                                             double d_min, double d_max, std::size_t sensor_window);

/// Outer loop: voltage error -> current reference in [0, i_max].
[[nodiscard]] double voltage_step(CascadeController& ctl, double v_ref, double v_meas, double dt) noexcept;

/// Inner loop: current error -> duty in the bounds of `i_loop`. Multi-phase
/// converters run one inner loop per phase from a shared outer loop.
[[nodiscard]] double current_step(PiController& i_loop, double i_ref, double i_meas_avg, double dt) noexcept;

/// Single-phase cascade update. Called once per switching period with the
/// window-averaged inductor current.
[[nodiscard]] double control_step(CascadeController& ctl, double v_ref, double v_meas, double i_meas_avg,
                                  double dt) noexcept;

/// Voltage-mode controller (feed-forward duty plus PI trim, no current
/// limit) that enables the reserve gate only after a detection delay.
struct BaselineController {
    PiController v_loop;             // output: duty trim
    double duty_feedforward = 0.75;  // nominal 1 - v_in / v_ref
    double d_min = 0.05;
    double d_max = 0.9;
    double detection_delay = 50e-6;  // s
    bool swapped = false;
};

struct BaselineOutput {
    double duty = 0.0;
    bool gate_reserve_enabled = false;
};

[[nodiscard]] BaselineOutput baseline_step(BaselineController& ctl, std::optional<double> fault_onset, double now,
                                           double v_ref, double v_meas, double dt) noexcept;

[[nodiscard]] double moving_average(std::span<const double> samples) noexcept;

/// Fixed-capacity ring buffer of current samples; the cheap averaging sensor.
class AveragingSensor {
public:
    explicit AveragingSensor(std::size_t window);

    void push(double sample) noexcept;
    [[nodiscard]] bool empty() const noexcept { return count_ == 0; }
    /// Mean over the filled part of the window. Must not be empty.
    [[nodiscard]] double mean() const noexcept;

private:
    std::vector<double> buf_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
};

}  // namespace ftboost
