#pragma once

#include "ftboost/scenario.hpp"

#include <cstddef>
#include <string>

namespace ftboost::test {

// Reference plant: 50 V -> 200 V, 200 W, 1.8 mH, 470 uF, 20 kHz.
inline ScenarioConfig reference_config(double t_end = 0.05, std::size_t phases = 1) {
    ScenarioConfig cfg;
    cfg.name = "reference";
    cfg.converter.v_in = 50.0;
    cfg.converter.c_out = 470e-6;
    cfg.converter.f_sw = 20e3;
    cfg.p_out = 200.0 * static_cast<double>(phases);
    cfg.v_ref = 200.0;
    cfg.converter.r_load = cfg.v_ref * cfg.v_ref / cfg.p_out;
    for (std::size_t p = 0; p < phases; ++p) {
        BoostPhaseParams ph;
        ph.carrier_phase = static_cast<double>(p) / static_cast<double>(phases);
        cfg.converter.phases.push_back(ph);
    }
    const std::size_t spp = phases == 3 ? 240 : 200;
    cfg.control = CascadeMode{make_cascade(1.2, 150.0, 0.08, 75.0, 6.0, 0.05, 0.9, spp)};
    cfg.overcurrent_threshold = 6.0;
    cfg.sim.dt = cfg.converter.t_sw() / static_cast<double>(spp);
    cfg.sim.t_end = t_end;
    cfg.sim.decimation = 1;
    cfg.sim.start = StartMode::Steady;
    return cfg;
}

inline ScenarioConfig ideal_open_loop(double duty, double t_end = 0.02) {
    ScenarioConfig cfg = reference_config(t_end);
    cfg.converter.phases[0].arrangement = SingleSwitch{SwitchDevice{0.0, 0.0, 100e-9, Health::Healthy}};
    cfg.converter.phases[0].out_diode = DiodeDevice{0.0, 0.0};
    cfg.control = OpenLoopFixedDuty{duty};
    return cfg;
}

}  // namespace ftboost::test
