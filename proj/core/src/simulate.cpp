#include "ftboost/simulate.hpp"

#include "ftboost/metrics.hpp"

#include <cmath>
#include <optional>
#include <variant>

namespace ftboost {

namespace {

/// Runtime state of whichever controller the scenario selects.
class DutySource {
public:
    DutySource(const ControlMode& mode, std::size_t phases, std::size_t steps_per_period)
        : mode_(mode), duty_(phases, 0.0) {
        if (auto* c = std::get_if<CascadeMode>(&mode_)) {
            i_loops_.assign(phases, c->controller.i_loop);
            const std::size_t window = c->controller.sensor_window ? c->controller.sensor_window : steps_per_period;
            sensors_.assign(phases, AveragingSensor(window));
        }
    }

    void preload_steady(double i_phase, double duty) {
        if (auto* c = std::get_if<CascadeMode>(&mode_)) {
            c->controller.v_loop.preload(i_phase);
            for (auto& loop : i_loops_) loop.preload(duty);
        }
    }

    void sense(std::span<const double> i_l) {
        for (std::size_t p = 0; p < sensors_.size(); ++p) sensors_[p].push(i_l[p]);
    }

    void update(double t, double t_sw, double v_ref, double v_c, std::span<const double> i_l,
                std::optional<double> fault_onset) {
        if (auto* c = std::get_if<CascadeMode>(&mode_)) {
            i_ref_ = voltage_step(c->controller, v_ref, v_c, t_sw);
            for (std::size_t p = 0; p < duty_.size(); ++p) {
                if (sensors_[p].empty()) sensors_[p].push(i_l[p]);
                duty_[p] = current_step(i_loops_[p], i_ref_, sensors_[p].mean(), t_sw);
            }
        } else if (auto* b = std::get_if<BaselineMode>(&mode_)) {
            const BaselineOutput out = baseline_step(b->controller, fault_onset, t, v_ref, v_c, t_sw);
            duty_.assign(duty_.size(), out.duty);
            reserve_enabled_ = out.gate_reserve_enabled;
        } else {
            duty_.assign(duty_.size(), std::get<OpenLoopFixedDuty>(mode_).duty);
        }
    }

    [[nodiscard]] bool is_baseline() const noexcept { return std::holds_alternative<BaselineMode>(mode_); }
    [[nodiscard]] bool reserve_enabled() const noexcept { return !is_baseline() || reserve_enabled_; }
    [[nodiscard]] double duty(std::size_t p) const noexcept { return duty_[p]; }
    [[nodiscard]] double i_ref() const noexcept { return i_ref_; }

private:
    ControlMode mode_;
    std::vector<PiController> i_loops_;
    std::vector<AveragingSensor> sensors_;
    std::vector<double> duty_;
    double i_ref_ = 0.0;
    bool reserve_enabled_ = false;
};

}  // namespace

SimulationResult simulate(const ScenarioConfig& config, const SimulateOptions& options) {
    validate(config);

    ConverterParams plant = config.converter;
    double v_ref = config.v_ref;
    const std::size_t n = plant.phases.size();
    const std::size_t spp = config.steps_per_period();
    const std::size_t total = config.total_steps();
    const std::size_t decimation = config.sim.decimation;
    const double dt = config.sim.dt;
    const double t_sw = plant.t_sw();

    std::vector<std::size_t> offset(n);
    for (std::size_t p = 0; p < n; ++p)
        offset[p] = static_cast<std::size_t>(std::llround(plant.phases[p].carrier_phase * static_cast<double>(spp))) % spp;

    DutySource control(config.control, n, spp);
    ConverterState state;
    state.i_l.assign(n, 0.0);
    if (config.sim.start == StartMode::Steady) {
        const double i_phase = v_ref * v_ref / (plant.r_load * plant.v_in * static_cast<double>(n));
        const double d = 1.0 - plant.v_in / v_ref;
        // ideal CCM waveform of phase p at its local carrier time tau
        auto ideal = [&](std::size_t p, double tau) {
            const double l = plant.phases[p].l;
            const double ripple = plant.v_in * d * t_sw / l;
            if (tau < d * t_sw) return std::pair{i_phase - 0.5 * ripple + plant.v_in * tau / l, false};
            return std::pair{i_phase + 0.5 * ripple - (v_ref - plant.v_in) * (tau - d * t_sw) / l, true};
        };
        auto local_time = [&](std::size_t p, std::size_t k) {
            return static_cast<double>((k + spp - offset[p]) % spp) * dt;
        };
        double charge = 0.0;
        double charge_sum = 0.0;
        for (std::size_t k = 0; k < spp; ++k) {
            charge_sum += charge;
            double i_c = -v_ref / plant.r_load;
            for (std::size_t p = 0; p < n; ++p) {
                const auto [i, discharging] = ideal(p, local_time(p, k) + 0.5 * dt);
                if (discharging) i_c += i;
            }
            charge += i_c * dt;
        }
        state.v_c = v_ref - charge_sum / static_cast<double>(spp) / plant.c_out;
        for (std::size_t p = 0; p < n; ++p) state.i_l[p] = ideal(p, local_time(p, 0)).first;
        control.preload_steady(i_phase, d);
    } else {
        state.v_c = config.sim.initial_v_c.value_or(plant.v_in);
    }

    EventSchedule schedule(config.faults, config.steps, dt);
    Rk4Stepper stepper(n);
    MetricsAccumulator metrics(config);

    std::vector<PhaseMode> modes(n);
    std::vector<double> duty(n, 0.0);
    std::vector<double> t_off(n, 0.0);  // gate falling edge, snapped to the nearest step
    const auto snap = [&](double d) { return std::round(d * static_cast<double>(spp)) * dt; };
    std::vector<std::optional<double>> reserve_seen(n);
    std::optional<double> fault_onset;

    StepSample sample;
    sample.phases.resize(n);

    SimulationResult result;
    result.log.dt = dt;
    result.log.decimation = decimation;
    result.log.phase_count = n;
    if (options.keep_log) result.log.samples.reserve(total / decimation + 1);

    const std::size_t summary_steps = std::min(total, kSummaryPeriods * spp);
    const std::size_t summary_start = total - summary_steps;
    double sum_v = 0.0;
    std::vector<double> sum_i(n, 0.0);

    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        state.t = t;

        for (const FaultEvent& f : schedule.apply_due(k, plant, v_ref).faults)
            if (!fault_onset) fault_onset = f.time;

        if (k % spp == 0) {
            control.update(t, t_sw, v_ref, state.v_c, state.i_l, fault_onset);
            if (k == 0)
                for (std::size_t p = 0; p < n; ++p) {
                    duty[p] = control.duty(p);
                    t_off[p] = snap(duty[p]);
                }
        }

        for (std::size_t p = 0; p < n; ++p) {
            BoostPhaseParams& ph = plant.phases[p];
            const std::size_t local = (k + spp - offset[p]) % spp;
            if (local == 0) {
                duty[p] = control.duty(p);
                t_off[p] = snap(duty[p]);
            }
            const double t_local = static_cast<double>(local) * dt;
            const double i = state.i_l[p];

            GatePair gates;
            auto* cell = std::get_if<RedundantCell>(&ph.arrangement);
            if (cell) {
                gates = cell_gates(t_local, t_off[p] / t_sw, t_sw, cell->t_d);
                gates.reserve = gates.reserve && control.reserve_enabled();
                if (reserve_seen[p]) relay_update(*cell, *reserve_seen[p], t);
            } else {
                gates.main = gate_window(t_local, 0.0, t_off[p], t_sw);
            }

            const BranchPath path = arrangement_path(ph.arrangement, gates, i);
            modes[p] = phase_mode(ph, path, i, state.v_c, plant.v_in);

            PhaseSample& s = sample.phases[p];
            s.i_l = i;
            s.gate_main = gates.main;
            s.gate_reserve = gates.reserve;
            s.i_main = path.main_share * i;
            s.i_reserve = path.reserve_share * i;
            s.i_out_diode = modes[p].kind == ModeKind::Discharging ? i : 0.0;
            s.duty = duty[p];
            s.mode = modes[p].kind;
            s.conduction_loss = phase_conduction_loss(ph, modes[p], i);
            if (cell) {
                s.fuse_main_acc = cell->main_fuse.accumulated;
                s.fuse_main_blown = cell->main_fuse.blown;
                s.fuse_reserve_acc = cell->reserve_fuse.accumulated;
                s.fuse_reserve_blown = cell->reserve_fuse.blown;
                if (s.i_reserve > 0.0 && !reserve_seen[p]) reserve_seen[p] = t;
            }
        }

        sample.step = k;
        sample.t = t;
        sample.v_c = state.v_c;
        sample.v_ref = v_ref;
        sample.r_load = plant.r_load;
        sample.i_ref = control.i_ref();

        if (options.observer) options.observer(sample);
        metrics.observe(sample, dt);
        if (options.keep_log && k % decimation == 0) result.log.samples.push_back(sample);

        if (k == total) break;

        if (k >= summary_start) {
            sum_v += state.v_c;
            for (std::size_t p = 0; p < n; ++p) sum_i[p] += state.i_l[p];
        }

        for (std::size_t p = 0; p < n; ++p) {
            if (auto* cell = std::get_if<RedundantCell>(&plant.phases[p].arrangement)) {
                const PhaseSample& s = sample.phases[p];
                cell->main_fuse = fuse_step(cell->main_fuse, s.i_main, dt);
                cell->reserve_fuse = fuse_step(cell->reserve_fuse, s.i_reserve, dt);
            }
        }
        control.sense(state.i_l);
        stepper.step(state, modes, plant, dt);
    }

    const double count = static_cast<double>(std::max<std::size_t>(summary_steps, 1));
    result.summary.window_start = static_cast<double>(summary_start) * dt;
    result.summary.window_end = static_cast<double>(total) * dt;
    result.summary.mean_v_c = sum_v / count;
    result.summary.mean_i_l.resize(n);
    for (std::size_t p = 0; p < n; ++p) result.summary.mean_i_l[p] = sum_i[p] / count;
    result.metrics = metrics.finish();
    return result;
}

}  // namespace ftboost
