#include "ftboost/scenario.hpp"

#include "ftboost/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ftboost {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void physics(const std::string& field, const std::string& msg) {
    throw ConfigError(ConfigError::Category::Physics, field, field + ": " + msg);
}

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) physics(field, "must be a positive finite number");
}

void require_non_negative(double v, const std::string& field) {
    if (!(v >= 0.0) || !std::isfinite(v)) physics(field, "must be a non-negative finite number");
}

void check_switch(const SwitchDevice& sw, const std::string& field) {
    require_non_negative(sw.r_on, field + ".r_on");
    require_non_negative(sw.v_drop, field + ".v_drop");
    require_positive(sw.turn_on_time, field + ".turn_on_time");
}

bool same_device(SwitchDevice a, SwitchDevice b) {
    a.health = b.health = Health::Healthy;
    return a == b;
}

/// Integer ratio a / b, or nullopt when b does not divide a.
std::optional<std::size_t> exact_ratio(double a, double b) {
    const double r = a / b;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-6 * n) return std::nullopt;
    return static_cast<std::size_t>(n);
}

double min_duty(const ControlMode& mode) {
    return std::visit(overloaded{
                          [](const CascadeMode& m) { return m.controller.d_min(); },
                          [](const BaselineMode& m) { return m.controller.d_min; },
                          [](const OpenLoopFixedDuty& m) { return m.duty; },
                      },
                      mode);
}

void check_pi(const PiController& pi, const std::string& field) {
    require_non_negative(pi.kp, field + ".kp");
    require_non_negative(pi.ki, field + ".ki");
}

}  // namespace

std::size_t ScenarioConfig::steps_per_period() const {
    const auto n = exact_ratio(converter.t_sw(), sim.dt);
    if (!n) physics("simulation.dt", "must divide the switching period t_sw evenly");
    return *n;
}

std::size_t ScenarioConfig::total_steps() const {
    return static_cast<std::size_t>(std::llround(sim.t_end / sim.dt));
}

std::size_t event_step(double time, double dt) noexcept {
    const double k = std::ceil(time / dt - 1e-6);
    return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

void validate(const ScenarioConfig& config) {
    const ConverterParams& cv = config.converter;
    require_positive(cv.v_in, "converter.v_in");
    require_positive(cv.c_out, "converter.c_out");
    require_positive(cv.r_load, "converter.r_load");
    require_positive(cv.f_sw, "converter.f_sw");
    require_positive(config.v_ref, "converter.v_out");
    require_positive(config.p_out, "converter.p_out");
    if (config.v_ref <= cv.v_in) physics("converter.v_out", "a boost converter needs v_out > v_in");
    if (cv.phases.empty()) physics("phases", "at least one phase is required");

    require_positive(config.sim.dt, "simulation.dt");
    require_positive(config.sim.t_end, "simulation.t_end");
    if (config.sim.decimation < 1) physics("simulation.decimation", "must be >= 1");
    if (config.sim.initial_v_c) require_non_negative(*config.sim.initial_v_c, "simulation.initial_v_c");
    const std::size_t spp = config.steps_per_period();
    if (spp < 4) physics("simulation.dt", "needs at least 4 steps per switching period");
    if (config.sim.t_end < config.sim.dt) physics("simulation.t_end", "shorter than one step");

    const double t_sw = cv.t_sw();
    const double d_lo = min_duty(config.control);

    for (std::size_t k = 0; k < cv.phases.size(); ++k) {
        const BoostPhaseParams& ph = cv.phases[k];
        const std::string base = "phases[" + std::to_string(k) + "]";
        require_positive(ph.l, base + ".l");
        require_non_negative(ph.r_l, base + ".r_l");
        require_non_negative(ph.out_diode.v_f, base + ".out_diode.v_f");
        require_non_negative(ph.out_diode.r_on, base + ".out_diode.r_on");
        if (!(ph.carrier_phase >= 0.0 && ph.carrier_phase < 1.0))
            physics(base + ".carrier_phase", "must lie in [0, 1)");

        const std::string arr = base + ".arrangement";
        std::visit(overloaded{
                       [&](const SingleSwitch& s) { check_switch(s.device, arr + ".device"); },
                       [&](const SeriesPair& s) {
                           check_switch(s.first, arr + ".devices[0]");
                           check_switch(s.second, arr + ".devices[1]");
                       },
                       [&](const ParallelPair& p) {
                           check_switch(p.first, arr + ".devices[0]");
                           check_switch(p.second, arr + ".devices[1]");
                           if (!same_device(p.first, p.second))
                               physics(arr + ".devices", "parallel devices must be identical");
                       },
                       [&](const RedundantCell& c) {
                           validate_cell(c, arr.c_str());
                           if (c.t_d >= d_lo * t_sw - 1e-9 * t_sw) {
                               std::ostringstream os;
                               os << "t_d (" << c.t_d << " s) must be shorter than the minimum duty * t_sw ("
                                  << d_lo * t_sw << " s); the reserve switch could never arm";
                               physics(arr + ".t_d", os.str());
                           }
                       },
                   },
                   ph.arrangement);
    }

    std::visit(overloaded{
                   [&](const CascadeMode& m) {
                       const CascadeController& c = m.controller;
                       check_pi(c.v_loop, "control.voltage_loop");
                       check_pi(c.i_loop, "control.current_loop");
                       require_positive(c.i_max, "control.i_max");
                       if (!(c.d_min() > 0.0 && c.d_min() < c.d_max() && c.d_max() < 1.0))
                           physics("control.d_min", "need 0 < d_min < d_max < 1");
                       if (c.sensor_window < 1) physics("control.sensor_window", "must be >= 1");
                   },
                   [&](const BaselineMode& m) {
                       const BaselineController& c = m.controller;
                       check_pi(c.v_loop, "control.voltage_loop");
                       require_non_negative(c.detection_delay, "control.detection_delay");
                       if (!(c.d_min > 0.0 && c.d_min < c.d_max && c.d_max < 1.0))
                           physics("control.d_min", "need 0 < d_min < d_max < 1");
                       if (!(c.duty_feedforward >= c.d_min && c.duty_feedforward <= c.d_max))
                           physics("control", "feed-forward duty 1 - v_in/v_out falls outside [d_min, d_max]");
                   },
                   [&](const OpenLoopFixedDuty& m) {
                       if (!(m.duty > 0.0 && m.duty < 1.0)) physics("control.duty", "must lie in (0, 1)");
                   },
               },
               config.control);
    require_positive(config.overcurrent_threshold, "control.i_max");

    std::set<std::pair<std::size_t, FaultTarget>> seen;
    for (std::size_t e = 0; e < config.faults.size(); ++e) {
        const FaultEvent& f = config.faults[e];
        const std::string field = "events[fault " + std::to_string(e) + "]";
        if (!(f.time >= 0.0 && f.time < config.sim.t_end)) physics(field + ".time", "must lie in [0, t_end)");
        if (f.phase_index >= cv.phases.size()) physics(field + ".phase", "no such phase");
        if (!seen.insert({f.phase_index, f.target}).second)
            physics(field, "at most one fault per device per run");
        if (f.target == FaultTarget::ReserveSwitch &&
            std::holds_alternative<SingleSwitch>(cv.phases[f.phase_index].arrangement))
            physics(field + ".target", "a single-switch arrangement has no second device");
    }
    for (std::size_t e = 0; e < config.steps.size(); ++e) {
        const StepEvent& s = config.steps[e];
        const std::string field = "events[step " + std::to_string(e) + "]";
        if (!(s.time >= 0.0 && s.time < config.sim.t_end)) physics(field + ".time", "must lie in [0, t_end)");
        std::visit(overloaded{
                       [&](const LoadStep& l) { require_positive(l.r_load, field + ".r_load"); },
                       [&](const ReferenceStep& r) {
                           require_positive(r.v_ref, field + ".v_ref");
                           if (r.v_ref <= cv.v_in) physics(field + ".v_ref", "must exceed v_in");
                       },
                   },
                   s.change);
    }

    if (config.thermal) {
        const ThermalSettings& t = *config.thermal;
        require_non_negative(t.r_on, "thermal.r_on");
        require_non_negative(t.v_drop, "thermal.v_drop");
        require_non_negative(t.e_on, "thermal.e_on");
        require_non_negative(t.e_off, "thermal.e_off");
        require_positive(t.r_th_j_hs, "thermal.r_th_j_hs");
        require_positive(t.r_th_hs_amb, "thermal.r_th_hs_amb");
        require_positive(t.p_out, "thermal.p_out");
        require_positive(t.v_out, "thermal.v_out");
        if (t.v_out <= cv.v_in) physics("thermal.v_out", "must exceed v_in");
    }
}

void inject_device_fault(SwitchArrangement& arrangement, const FaultEvent& fault) {
    const Health h = fault.kind == FaultKind::Open ? Health::FaultedOpen : Health::FaultedShort;
    const bool main = fault.target == FaultTarget::MainSwitch;
    auto inject = [&](SwitchDevice& sw) {
        try {
            inject_fault(sw, h);
        } catch (const std::logic_error& e) {
            throw ConfigError(ConfigError::Category::Physics, "events",
                              "fault on phase " + std::to_string(fault.phase_index) + ": " + e.what());
        }
    };
    std::visit(overloaded{
                   [&](SingleSwitch& s) {
                       if (!main)
                           throw ConfigError(ConfigError::Category::Physics, "events",
                                             "single-switch arrangement has no reserve device");
                       inject(s.device);
                   },
                   [&](SeriesPair& s) { inject(main ? s.first : s.second); },
                   [&](ParallelPair& p) { inject(main ? p.first : p.second); },
                   [&](RedundantCell& c) { inject(main ? c.main : c.reserve); },
               },
               arrangement);
}

namespace {

void apply_event(const std::variant<FaultEvent, StepEvent>& event, ConverterParams& plant, double& v_ref) {
    std::visit(overloaded{
                   [&](const FaultEvent& f) {
                       if (f.phase_index >= plant.phases.size())
                           throw ConfigError(ConfigError::Category::Physics, "events", "fault phase out of range");
                       inject_device_fault(plant.phases[f.phase_index].arrangement, f);
                   },
                   [&](const StepEvent& s) {
                       std::visit(overloaded{
                                      [&](const LoadStep& l) { plant.r_load = l.r_load; },
                                      [&](const ReferenceStep& r) { v_ref = r.v_ref; },
                                  },
                                  s.change);
                   },
               },
               event);
}

}  // namespace

EventSchedule::EventSchedule(std::vector<FaultEvent> faults, std::vector<StepEvent> steps, double dt) {
    pending_.reserve(faults.size() + steps.size());
    for (auto& f : faults) pending_.push_back({event_step(f.time, dt), std::move(f)});
    for (auto& s : steps) pending_.push_back({event_step(s.time, dt), std::move(s)});
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const Pending& a, const Pending& b) { return a.step < b.step; });
}

EventSchedule::Applied EventSchedule::apply_due(std::size_t step, ConverterParams& plant, double& v_ref) {
    Applied applied;
    while (cursor_ < pending_.size() && pending_[cursor_].step <= step) {
        const auto& event = pending_[cursor_].event;
        apply_event(event, plant, v_ref);
        if (const auto* f = std::get_if<FaultEvent>(&event)) {
            applied.faults.push_back(*f);
        } else {
            applied.steps.push_back(std::get<StepEvent>(event));
        }
        ++cursor_;
    }
    return applied;
}

bool EventSchedule::exhausted() const noexcept { return cursor_ >= pending_.size(); }

void apply_schedule(const std::vector<FaultEvent>& faults, const std::vector<StepEvent>& steps, double now,
                    ConverterParams& plant, double& v_ref) {
    std::vector<std::pair<double, std::variant<FaultEvent, StepEvent>>> due;
    for (const auto& f : faults)
        if (f.time <= now) due.emplace_back(f.time, f);
    for (const auto& s : steps)
        if (s.time <= now) due.emplace_back(s.time, s);
    std::stable_sort(due.begin(), due.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& entry : due) apply_event(entry.second, plant, v_ref);
}

}  // namespace ftboost
