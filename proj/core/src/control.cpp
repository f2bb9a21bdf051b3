#include "ftboost/control.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace ftboost {

void PiController::preload(double output) noexcept {
    if (ki != 0.0) integ = std::clamp(output, out_min, out_max) / ki;
}

double pi_step(PiController& pi, double error, double dt) noexcept {
    const double candidate = pi.integ + error * dt;
    const double u = pi.kp * error + pi.ki * candidate;
    if (u >= pi.out_min && u <= pi.out_max && pi.ki != 0.0) {
        pi.integ = std::clamp(pi.ki * candidate, pi.out_min, pi.out_max) / pi.ki;
    } else if (pi.ki != 0.0) {
        pi.integ = std::clamp(pi.ki * pi.integ, pi.out_min, pi.out_max) / pi.ki;
    }
    return std::clamp(pi.raw_output(error), pi.out_min, pi.out_max);
}

CascadeController make_cascade(double kp_v, double ki_v, double kp_i, double ki_i, double i_max, double d_min,
                               double d_max, std::size_t sensor_window) {
    CascadeController ctl;
    ctl.v_loop = PiController{kp_v, ki_v, 0.0, 0.0, i_max};
    ctl.i_loop = PiController{kp_i, ki_i, 0.0, d_min, d_max};
    ctl.i_max = i_max;
    ctl.sensor_window = sensor_window;
    return ctl;
}

double voltage_step(CascadeController& ctl, double v_ref, double v_meas, double dt) noexcept {
    return std::min(pi_step(ctl.v_loop, v_ref - v_meas, dt), ctl.i_max);
}

double current_step(PiController& i_loop, double i_ref, double i_meas_avg, double dt) noexcept {
    return pi_step(i_loop, i_ref - i_meas_avg, dt);
}

double control_step(CascadeController& ctl, double v_ref, double v_meas, double i_meas_avg, double dt) noexcept {
    const double i_ref = voltage_step(ctl, v_ref, v_meas, dt);
    return current_step(ctl.i_loop, i_ref, i_meas_avg, dt);
}

BaselineOutput baseline_step(BaselineController& ctl, std::optional<double> fault_onset, double now, double v_ref,
                             double v_meas, double dt) noexcept {
    ctl.v_loop.out_min = ctl.d_min - ctl.duty_feedforward;
    ctl.v_loop.out_max = ctl.d_max - ctl.duty_feedforward;
    const double trim = pi_step(ctl.v_loop, v_ref - v_meas, dt);
    if (fault_onset && now >= *fault_onset + ctl.detection_delay) ctl.swapped = true;
    return {std::clamp(ctl.duty_feedforward + trim, ctl.d_min, ctl.d_max), ctl.swapped};
}

double moving_average(std::span<const double> samples) noexcept {
    assert(!samples.empty());
    return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

AveragingSensor::AveragingSensor(std::size_t window) : buf_(std::max<std::size_t>(window, 1), 0.0) {}

void AveragingSensor::push(double sample) noexcept {
    if (count_ < buf_.size()) ++count_;
    buf_[head_] = sample;
    head_ = (head_ + 1) % buf_.size();
}

double AveragingSensor::mean() const noexcept {
    assert(count_ > 0);
    // Summed fresh each call (once per period) so no running-sum drift builds up.
    return moving_average(std::span<const double>(buf_.data(), count_));
}

}  // namespace ftboost
