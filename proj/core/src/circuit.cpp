#include "ftboost/circuit.hpp"

#include "ftboost/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ftboost {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

BranchPath single_path(const SwitchDevice& sw, bool gate) {
    const SwitchCapability cap = switch_capability(sw, gate);
    if (!cap) return {};
    const PathKind kind = sw.health == Health::FaultedShort ? PathKind::ForcedClosed : PathKind::MainClosed;
    return {kind, *cap, 1.0, 0.0};
}

BranchPath series_path(const SeriesPair& pair, bool gate) {
    const SwitchCapability a = switch_capability(pair.first, gate);
    const SwitchCapability b = switch_capability(pair.second, gate);
    if (!a || !b) return {};
    const bool both_shorted =
        pair.first.health == Health::FaultedShort && pair.second.health == Health::FaultedShort;
    return {both_shorted ? PathKind::ForcedClosed : PathKind::MainClosed,
            Conduction{a->r_eq + b->r_eq, a->v_eq + b->v_eq}, 1.0, 1.0};
}

BranchPath parallel_path(const ParallelPair& pair, bool gate) {
    const SwitchCapability a = switch_capability(pair.first, gate);
    const SwitchCapability b = switch_capability(pair.second, gate);
    const bool any_short =
        pair.first.health == Health::FaultedShort || pair.second.health == Health::FaultedShort;
    const PathKind kind = any_short ? PathKind::ForcedClosed : PathKind::MainClosed;
    if (a && b) return {kind, Conduction{a->r_eq / 2.0, (a->v_eq + b->v_eq) / 2.0}, 0.5, 0.5};
    if (a) return {kind, *a, 1.0, 0.0};
    if (b) return {kind, *b, 0.0, 1.0};
    return {};
}

}  // namespace

BranchPath arrangement_path(const SwitchArrangement& arrangement, GatePair gates, double i_branch) noexcept {
    return std::visit(overloaded{
                          [&](const SingleSwitch& s) { return single_path(s.device, gates.main); },
                          [&](const SeriesPair& s) { return series_path(s, gates.main); },
                          [&](const ParallelPair& p) { return parallel_path(p, gates.main); },
                          [&](const RedundantCell& c) { return cell_resolve(c, gates, i_branch); },
                      },
                      arrangement);
}

PhaseMode phase_mode(const BoostPhaseParams& phase, const BranchPath& path, double i_l, double v_c,
                     double v_in) noexcept {
    if (path.kind == PathKind::ForcedClosed) return {ModeKind::RailShorted, path};
    if (path.conducting()) return {ModeKind::Charging, path};
    if (i_l > 0.0 || v_in - v_c >= phase.out_diode.v_f) return {ModeKind::Discharging, path};
    return {ModeKind::Dcm, path};
}

void derivatives(std::span<const double> i_l, double v_c, std::span<const PhaseMode> modes,
                 const ConverterParams& params, Derivative& out) {
    out.di_l.resize(i_l.size());
    double i_out = 0.0;
    for (std::size_t k = 0; k < i_l.size(); ++k) {
        const BoostPhaseParams& ph = params.phases[k];
        const double i = i_l[k];
        switch (modes[k].kind) {
        case ModeKind::Charging:
        case ModeKind::RailShorted: {
            const Conduction& eq = modes[k].path.eq;
            out.di_l[k] = (params.v_in - i * (ph.r_l + eq.r_eq) - eq.v_eq) / ph.l;
            break;
        }
        case ModeKind::Discharging:
            out.di_l[k] = (params.v_in - v_c - ph.out_diode.v_f - i * (ph.r_l + ph.out_diode.r_on)) / ph.l;
            i_out += i;
            break;
        case ModeKind::Dcm:
            out.di_l[k] = 0.0;
            break;
        }
    }
    out.dv_c = (i_out - v_c / params.r_load) / params.c_out;
}

Derivative derivatives(const ConverterState& state, std::span<const PhaseMode> modes,
                       const ConverterParams& params) {
    Derivative d;
    derivatives(state.i_l, state.v_c, modes, params, d);
    return d;
}

double phase_conduction_loss(const BoostPhaseParams& phase, const PhaseMode& mode, double i_l) noexcept {
    switch (mode.kind) {
    case ModeKind::Charging:
    case ModeKind::RailShorted:
        return i_l * i_l * (phase.r_l + mode.path.eq.r_eq) + i_l * mode.path.eq.v_eq;
    case ModeKind::Discharging:
        return i_l * i_l * (phase.r_l + phase.out_diode.r_on) + i_l * phase.out_diode.v_f;
    case ModeKind::Dcm:
        return 0.0;
    }
    return 0.0;
}

Rk4Stepper::Rk4Stepper(std::size_t phase_count) : tmp_(phase_count) {
    for (Derivative* k : {&k1_, &k2_, &k3_, &k4_}) k->di_l.resize(phase_count);
}

void Rk4Stepper::step(ConverterState& state, std::span<const PhaseMode> modes, const ConverterParams& params,
                      double dt) {
    const std::size_t n = state.i_l.size();
    tmp_.resize(n);

    derivatives(state.i_l, state.v_c, modes, params, k1_);

    for (std::size_t k = 0; k < n; ++k) tmp_[k] = state.i_l[k] + 0.5 * dt * k1_.di_l[k];
    derivatives(tmp_, state.v_c + 0.5 * dt * k1_.dv_c, modes, params, k2_);

    for (std::size_t k = 0; k < n; ++k) tmp_[k] = state.i_l[k] + 0.5 * dt * k2_.di_l[k];
    derivatives(tmp_, state.v_c + 0.5 * dt * k2_.dv_c, modes, params, k3_);

    for (std::size_t k = 0; k < n; ++k) tmp_[k] = state.i_l[k] + dt * k3_.di_l[k];
    derivatives(tmp_, state.v_c + dt * k3_.dv_c, modes, params, k4_);

    const double w = dt / 6.0;
    bool finite = true;
    for (std::size_t k = 0; k < n; ++k) {
        double i = state.i_l[k] + w * (k1_.di_l[k] + 2.0 * k2_.di_l[k] + 2.0 * k3_.di_l[k] + k4_.di_l[k]);
        finite = finite && std::isfinite(i) && std::abs(i) <= kBlowupLimit;
        i = std::max(0.0, i);  // unidirectional boost: DCM clamp
        state.i_l[k] = i;
    }
    state.v_c += w * (k1_.dv_c + 2.0 * k2_.dv_c + 2.0 * k3_.dv_c + k4_.dv_c);
    finite = finite && std::isfinite(state.v_c) && std::abs(state.v_c) <= kBlowupLimit;
    state.t += dt;

    if (!finite) {
        std::ostringstream os;
        os << "numerical blowup at t=" << state.t << " s (state magnitude exceeded " << kBlowupLimit << ")";
        throw NumericalBlowup(state.t, os.str());
    }
}

ConverterState integrate_step(ConverterState state, std::span<const PhaseMode> modes,
                              const ConverterParams& params, double dt) {
    Rk4Stepper stepper(state.i_l.size());
    stepper.step(state, modes, params, dt);
    return state;
}

}  // namespace ftboost
