#pragma once

// Device-level models for the redundant switch cell: controllable switches,
// diodes, i2t fuses, the optional diode-bypass relay, and the routing logic
// that decides which branch of the cell carries the phase current.
//
// All types are plain values. Operations are pure state transitions except
// the explicitly mutating helpers (inject_fault, relay_update).

#include <optional>

namespace ftboost {

enum class Health { Healthy, FaultedOpen, FaultedShort };

struct SwitchDevice {
    double r_on = 0.1;            // ohm
    double v_drop = 0.0;          // V, fixed conduction drop
    double turn_on_time = 100e-9; // s
    Health health = Health::Healthy;

    bool operator==(const SwitchDevice&) const = default;
};

/// Linear equivalent of a conducting path: v(i) = v_eq + i * r_eq.
struct Conduction {
    double r_eq = 0.0;
    double v_eq = 0.0;

    [[nodiscard]] constexpr double drop(double i) const noexcept { return v_eq + i * r_eq; }
    bool operator==(const Conduction&) const = default;
};

/// nullopt means the switch presents as open.
using SwitchCapability = std::optional<Conduction>;

/// A shorted switch conducts regardless of gate; an open-faulted one never does.
[[nodiscard]] SwitchCapability switch_capability(const SwitchDevice& sw, bool gate) noexcept;

/// Moves a healthy switch into a faulted state. Faulted states are absorbing,
/// so injecting into an already faulted device throws std::logic_error.
void inject_fault(SwitchDevice& sw, Health fault);

struct DiodeDevice {
    double v_f = 0.7;  // V
    double r_on = 0.0; // ohm

    [[nodiscard]] constexpr bool conducts(double v_forward) const noexcept { return v_forward >= v_f; }
    bool operator==(const DiodeDevice&) const = default;
};

/// Excess-i2t fuse. Heating above the rated current, linear cooling below it.
struct FuseDevice {
    double i_rated = 8.0;        // A
    double i2t_rating = 0.03;    // A^2 s
    double accumulated = 0.0;    // A^2 s
    bool blown = false;

    bool operator==(const FuseDevice&) const = default;
};

/// accumulated' = max(0, accumulated + (i^2 - i_rated^2) dt); blows once
/// accumulated' reaches i2t_rating to within 1e-12 relative. A blown fuse is returned unchanged.
[[nodiscard]] FuseDevice fuse_step(FuseDevice fuse, double i, double dt) noexcept;

struct RelayDevice {
    double close_delay = 5e-3;  // s after fault detection
    bool closed = false;

    bool operator==(const RelayDevice&) const = default;
};

/// Main switch + fuse in one branch; reserve switch + blocking diode + fuse in
/// the other. The reserve gate rises t_d after the main gate so that the
/// diode is already reverse-biased by the main on-drop when the reserve closes.
struct RedundantCell {
    SwitchDevice main;
    SwitchDevice reserve;
    FuseDevice main_fuse;
    FuseDevice reserve_fuse;
    DiodeDevice diode;
    std::optional<RelayDevice> relay;
    double t_d = 2e-6;  // s

    bool operator==(const RedundantCell&) const = default;
};

/// Left-hand side minus right-hand side of the diode selection condition at
/// the main fuse's rated current:
///   (i r_main + v_main) - (i r_reserve + v_reserve) - v_f.
/// Negative means the diode stays reverse-biased while the main branch conducts.
[[nodiscard]] double diode_selection_margin(const RedundantCell& cell) noexcept;

/// Throws ConfigError (physics) naming `field_prefix`.<field> when the cell
/// violates t_d > turn_on_time, the diode selection condition, or a device
/// parameter range.
void validate_cell(const RedundantCell& cell, const char* field_prefix);

struct GatePair {
    bool main = false;
    bool reserve = false;

    bool operator==(const GatePair&) const = default;
};

/// True when t_local lies in [t_on, t_off). Edges closer than 1e-9 * t_sw
/// count as coincident so a step starting exactly at t_off is off.
[[nodiscard]] inline bool gate_window(double t_local, double t_on, double t_off, double t_sw) noexcept {
    const double eps = 1e-9 * t_sw;
    return t_local > t_on - eps && t_local < t_off - eps;
}

/// Gate pattern within one switching period. Main rises at the period start,
/// reserve at t_d, both fall at duty * t_sw. Throws ConfigError when
/// t_d >= duty * t_sw because the reserve could then never arm.
[[nodiscard]] GatePair cell_gates(double t_local, double duty, double t_sw, double t_d);

enum class PathKind { MainClosed, ReserveClosed, AllOpen, ForcedClosed };

/// Result of routing the branch current through a switch arrangement.
/// `main_share` / `reserve_share` are the fractions of the branch current
/// flowing through the first and second device (a series pair carries the
/// full current in both, a parallel pair splits it).
struct BranchPath {
    PathKind kind = PathKind::AllOpen;
    Conduction eq;
    double main_share = 0.0;
    double reserve_share = 0.0;

    [[nodiscard]] constexpr bool conducting() const noexcept { return kind != PathKind::AllOpen; }
    bool operator==(const BranchPath&) const = default;
};

/// Priority routing:
///  (a) a short-faulted switch with intact fuse forces the cell closed;
///  (b) main closed with intact fuse -> MainClosed, reserve current 0;
///  (c) reserve closed, intact fuse, diode forward-biased or relay closed
///      -> ReserveClosed (diode drop included unless bypassed);
///  (d) otherwise AllOpen.
[[nodiscard]] BranchPath cell_resolve(const RedundantCell& cell, GatePair gates, double i_branch) noexcept;

/// Closes the relay (if present) once now >= fault_detected_time + close_delay.
void relay_update(RedundantCell& cell, double fault_detected_time, double now) noexcept;

}  // namespace ftboost
