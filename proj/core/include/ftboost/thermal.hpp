#pragma once

// Lumped steady-state thermal comparison of switch arrangements sharing one
// heat sink: per-device conduction + switching loss, then a two-level
// junction -> heat sink -> ambient resistor network.

#include <span>
#include <string>
#include <vector>

namespace ftboost {

enum class ArrangementKind { Single, Series, Parallel, Redundant };

[[nodiscard]] const char* to_string(ArrangementKind kind) noexcept;

struct LossModel {
    enum class Kind { Resistive, FixedDrop, Hybrid };
    Kind kind = Kind::Resistive;
    double r_on = 0.1;    // ohm, Resistive/Hybrid
    double v_drop = 0.7;  // V, FixedDrop/Hybrid
    double e_on = 0.0;    // J per turn-on
    double e_off = 0.0;   // J per turn-off
    double f_sw = 20e3;

    [[nodiscard]] double conduction(double i_rms, double i_avg) const noexcept;
};

[[nodiscard]] const char* to_string(LossModel::Kind kind) noexcept;

struct ThermalNetwork {
    double r_th_j_hs = 1.5;    // K/W, per device
    double r_th_hs_amb = 2.0;  // K/W
    double t_ambient = 25.0;   // degC
};

/// Per-device losses (W) for the switch current of one phase. `i_rms` and
/// `i_avg` are the period RMS/average of the current through the switch
/// position; `duty` > 0 marks the position as actively switching.
[[nodiscard]] std::vector<double> arrangement_losses(ArrangementKind arrangement, double i_rms, double i_avg,
                                                     double duty, const LossModel& model);

struct Temperatures {
    double t_heatsink = 0.0;
    std::vector<double> t_junction;

    [[nodiscard]] double max_junction() const noexcept;
};

[[nodiscard]] Temperatures steady_state_temps(const ThermalNetwork& network, std::span<const double> losses);

/// Boost operating point in CCM. The switch conducts the inductor current
/// during the on-interval, so with ripple delta:
///   i_avg = D I_L,  i_rms^2 = D (I_L^2 + delta^2 / 12).
struct OperatingPoint {
    double v_in = 50.0;
    double v_out = 200.0;
    double p_out = 100.0;
    double l = 1.8e-3;
    double f_sw = 20e3;

    [[nodiscard]] double duty() const noexcept { return 1.0 - v_in / v_out; }
    [[nodiscard]] double inductor_current() const noexcept { return p_out / v_in; }
    [[nodiscard]] double ripple() const noexcept { return v_in * duty() / (l * f_sw); }
    [[nodiscard]] double switch_avg() const noexcept;
    [[nodiscard]] double switch_rms() const noexcept;
};

struct ThermalRow {
    ArrangementKind arrangement = ArrangementKind::Single;
    std::vector<double> losses;
    double total_loss = 0.0;
    Temperatures temps;
};

struct ThermalReport {
    OperatingPoint point;
    LossModel model;
    ThermalNetwork network;
    std::vector<ThermalRow> rows;  // Single, Series, Parallel, Redundant
    std::vector<std::string> notes;

    [[nodiscard]] const ThermalRow& row(ArrangementKind kind) const;
};

[[nodiscard]] ThermalReport thermal_compare(const OperatingPoint& point, const LossModel& model,
                                            const ThermalNetwork& network);

/// Same table for switch currents measured elsewhere (e.g. a converged run).
[[nodiscard]] ThermalReport thermal_compare(const OperatingPoint& point, double switch_rms, double switch_avg,
                                            const LossModel& model, const ThermalNetwork& network);

}  // namespace ftboost
