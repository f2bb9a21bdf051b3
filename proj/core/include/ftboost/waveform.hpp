#pragma once

#include "ftboost/circuit.hpp"

#include <cstddef>
#include <vector>

namespace ftboost {

struct PhaseSample {
    double i_l = 0.0;
    bool gate_main = false;
    bool gate_reserve = false;
    double i_main = 0.0;
    double i_reserve = 0.0;
    double i_out_diode = 0.0;
    double fuse_main_acc = 0.0;
    bool fuse_main_blown = false;
    double fuse_reserve_acc = 0.0;
    bool fuse_reserve_blown = false;
    double duty = 0.0;
    ModeKind mode = ModeKind::Dcm;
    double conduction_loss = 0.0;  // W, not exported to CSV
};

/// State at t = step * dt together with the switching decisions in force
/// over [t, t + dt). Fuse channels show the fuse before this step's heating.
struct StepSample {
    std::size_t step = 0;
    double t = 0.0;
    double v_c = 0.0;
    double v_ref = 0.0;   // not exported to CSV
    double r_load = 0.0;  // not exported to CSV
    double i_ref = 0.0;   // not exported to CSV; cascade only
    std::vector<PhaseSample> phases;
};

struct WaveformLog {
    double dt = 0.0;
    std::size_t decimation = 1;
    std::size_t phase_count = 0;
    std::vector<StepSample> samples;

    [[nodiscard]] double sample_interval() const noexcept { return dt * static_cast<double>(decimation); }
};

}  // namespace ftboost
