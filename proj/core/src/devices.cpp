#include "ftboost/devices.hpp"

#include "ftboost/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ftboost {

namespace {

[[noreturn]] void physics_error(const char* prefix, const char* field, const std::string& msg) {
    std::string path = prefix ? std::string(prefix) : std::string();
    if (!path.empty()) path += '.';
    path += field;
    throw ConfigError(ConfigError::Category::Physics, path, path + ": " + msg);
}

void check_switch(const SwitchDevice& sw, const char* prefix, const char* name) {
    std::string p = std::string(prefix) + "." + name;
    if (!(sw.r_on >= 0.0)) physics_error(p.c_str(), "r_on", "must be >= 0");
    if (!(sw.v_drop >= 0.0)) physics_error(p.c_str(), "v_drop", "must be >= 0");
    if (!(sw.turn_on_time > 0.0)) physics_error(p.c_str(), "turn_on_time", "must be > 0");
}

void check_fuse(const FuseDevice& f, const char* prefix, const char* name) {
    std::string p = std::string(prefix) + "." + name;
    if (!(f.i_rated > 0.0)) physics_error(p.c_str(), "i_rated", "must be > 0");
    if (!(f.i2t_rating > 0.0)) physics_error(p.c_str(), "i2t", "must be > 0");
}

}  // namespace

SwitchCapability switch_capability(const SwitchDevice& sw, bool gate) noexcept {
    const bool closed = (gate && sw.health != Health::FaultedOpen) || sw.health == Health::FaultedShort;
    if (!closed) return std::nullopt;
    return Conduction{sw.r_on, sw.v_drop};
}

void inject_fault(SwitchDevice& sw, Health fault) {
    if (fault == Health::Healthy) throw std::logic_error("cannot inject a Healthy fault");
    if (sw.health != Health::Healthy) throw std::logic_error("switch is already faulted");
    sw.health = fault;
}

FuseDevice fuse_step(FuseDevice fuse, double i, double dt) noexcept {
    if (fuse.blown) return fuse;
    const double excess = (i * i - fuse.i_rated * fuse.i_rated) * dt;
    fuse.accumulated = std::max(0.0, fuse.accumulated + excess);
    if (fuse.accumulated >= fuse.i2t_rating * (1.0 - 1e-12)) fuse.blown = true;
    return fuse;
}

double diode_selection_margin(const RedundantCell& cell) noexcept {
    const double i = cell.main_fuse.i_rated;
    const double v_main = i * cell.main.r_on + cell.main.v_drop;
    const double v_reserve = i * cell.reserve.r_on + cell.reserve.v_drop;
    return v_main - v_reserve - cell.diode.v_f;
}

void validate_cell(const RedundantCell& cell, const char* field_prefix) {
    check_switch(cell.main, field_prefix, "main");
    check_switch(cell.reserve, field_prefix, "reserve");
    check_fuse(cell.main_fuse, field_prefix, "main_fuse");
    check_fuse(cell.reserve_fuse, field_prefix, "reserve_fuse");
    if (!(cell.diode.v_f > 0.0)) physics_error(field_prefix, "diode.v_f", "must be > 0");
    if (!(cell.diode.r_on >= 0.0)) physics_error(field_prefix, "diode.r_on", "must be >= 0");
    if (cell.relay && !(cell.relay->close_delay >= 0.0))
        physics_error(field_prefix, "relay.close_delay", "must be >= 0");

    const double t_on = std::max(cell.main.turn_on_time, cell.reserve.turn_on_time);
    if (!(cell.t_d > t_on)) {
        std::ostringstream os;
        os << "t_d must be longer than the switch turn-on time (t_d=" << cell.t_d
           << " s, turn_on_time=" << t_on << " s)";
        physics_error(field_prefix, "t_d", os.str());
    }
    const double margin = diode_selection_margin(cell);
    if (!(margin < 0.0)) {
        std::ostringstream os;
        os << "main on-drop minus reserve on-drop at rated current must stay below the diode "
              "forward voltage (excess " << margin << " V)";
        physics_error(field_prefix, "diode.v_f", os.str());
    }
}

GatePair cell_gates(double t_local, double duty, double t_sw, double t_d) {
    const double t_off = duty * t_sw;
    if (t_d >= t_off - 1e-9 * t_sw) {
        std::ostringstream os;
        os << "t_d (" << t_d << " s) must be shorter than duty * t_sw (" << t_off
           << " s); the reserve switch could never arm";
        throw ConfigError(ConfigError::Category::Physics, "t_d", os.str());
    }
    return GatePair{gate_window(t_local, 0.0, t_off, t_sw), gate_window(t_local, t_d, t_off, t_sw)};
}

BranchPath cell_resolve(const RedundantCell& cell, GatePair gates, double i_branch) noexcept {
    const SwitchCapability main = switch_capability(cell.main, gates.main);
    const SwitchCapability reserve = switch_capability(cell.reserve, gates.reserve);
    const bool main_ok = main && !cell.main_fuse.blown;
    const bool reserve_ok = reserve && !cell.reserve_fuse.blown;
    const bool bypassed = cell.relay && cell.relay->closed;

    auto reserve_eq = [&] {
        Conduction eq = *reserve;
        if (!bypassed) {
            eq.r_eq += cell.diode.r_on;
            eq.v_eq += cell.diode.v_f;
        }
        return eq;
    };

    if (cell.main.health == Health::FaultedShort && !cell.main_fuse.blown)
        return {PathKind::ForcedClosed, *main, 1.0, 0.0};
    if (cell.reserve.health == Health::FaultedShort && !cell.reserve_fuse.blown) {
        // A gated, healthy main branch still takes the current: its drop sits
        // below the diode threshold.
        if (main_ok) return {PathKind::ForcedClosed, *main, 1.0, 0.0};
        return {PathKind::ForcedClosed, reserve_eq(), 0.0, 1.0};
    }
    if (main_ok) return {PathKind::MainClosed, *main, 1.0, 0.0};

    const bool forward_biased = i_branch >= 0.0;
    if (reserve_ok && (forward_biased || bypassed))
        return {PathKind::ReserveClosed, reserve_eq(), 0.0, 1.0};
    return {};
}

void relay_update(RedundantCell& cell, double fault_detected_time, double now) noexcept {
    if (!cell.relay || cell.relay->closed) return;
    if (now >= fault_detected_time + cell.relay->close_delay) cell.relay->closed = true;
}

}  // namespace ftboost
