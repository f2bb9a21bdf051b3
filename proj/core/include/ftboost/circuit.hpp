#pragma once

// Switch-resolved (non-averaged) state-space model of an N-phase boost
// converter sharing one output capacitor and resistive load.

#include "ftboost/devices.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ftboost {

struct SingleSwitch {
    SwitchDevice device;
    bool operator==(const SingleSwitch&) const = default;
};

/// Both devices carry the full phase current; drops add.
struct SeriesPair {
    SwitchDevice first;
    SwitchDevice second;
    bool operator==(const SeriesPair&) const = default;
};

/// Identical devices sharing the phase current equally.
struct ParallelPair {
    SwitchDevice first;
    SwitchDevice second;
    bool operator==(const ParallelPair&) const = default;
};

using SwitchArrangement = std::variant<SingleSwitch, SeriesPair, ParallelPair, RedundantCell>;

struct BoostPhaseParams {
    double l = 1.8e-3;   // H
    double r_l = 0.0;    // ohm
    SwitchArrangement arrangement = RedundantCell{};
    DiodeDevice out_diode;
    double carrier_phase = 0.0;  // fraction of t_sw, [0, 1)

    bool operator==(const BoostPhaseParams&) const = default;
};

struct ConverterParams {
    double v_in = 50.0;
    double c_out = 470e-6;
    double r_load = 200.0;
    double f_sw = 20e3;
    std::vector<BoostPhaseParams> phases;

    [[nodiscard]] double t_sw() const noexcept { return 1.0 / f_sw; }
    bool operator==(const ConverterParams&) const = default;
};

struct ConverterState {
    std::vector<double> i_l;  // per phase, A, >= 0
    double v_c = 0.0;
    double t = 0.0;
};

enum class ModeKind : int { Charging = 0, Discharging = 1, Dcm = 2, RailShorted = 3 };

struct PhaseMode {
    ModeKind kind = ModeKind::Dcm;
    BranchPath path;
};

/// Routes the phase current through any arrangement. Redundant cells use
/// cell_resolve; the others have no fuses and only the main gate.
[[nodiscard]] BranchPath arrangement_path(const SwitchArrangement& arrangement, GatePair gates,
                                          double i_branch) noexcept;

/// The output diode is forward-biased when the inductor carries current or
/// the source alone exceeds v_c + v_f; otherwise the phase sits in DCM.
[[nodiscard]] PhaseMode phase_mode(const BoostPhaseParams& phase, const BranchPath& path, double i_l,
                                   double v_c, double v_in) noexcept;

struct Derivative {
    std::vector<double> di_l;
    double dv_c = 0.0;
};

void derivatives(std::span<const double> i_l, double v_c, std::span<const PhaseMode> modes,
                 const ConverterParams& params, Derivative& out);

[[nodiscard]] Derivative derivatives(const ConverterState& state, std::span<const PhaseMode> modes,
                                     const ConverterParams& params);

/// Instantaneous conduction loss (W) of one phase in the given mode.
[[nodiscard]] double phase_conduction_loss(const BoostPhaseParams& phase, const PhaseMode& mode,
                                           double i_l) noexcept;

/// Classical RK4 step with modes frozen over the step, followed by the DCM
/// clamp. Throws NumericalBlowup if any state leaves [-1e6, 1e6] or is not finite.
class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t phase_count = 0);

    void step(ConverterState& state, std::span<const PhaseMode> modes, const ConverterParams& params,
              double dt);

private:
    Derivative k1_, k2_, k3_, k4_;
    std::vector<double> tmp_;
};

[[nodiscard]] ConverterState integrate_step(ConverterState state, std::span<const PhaseMode> modes,
                                            const ConverterParams& params, double dt);

inline constexpr double kBlowupLimit = 1e6;

}  // namespace ftboost
