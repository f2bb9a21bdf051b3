#include "ftboost/devices.hpp"
#include "ftboost/simulate.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>

using namespace ftboost;

namespace {

ScenarioConfig bench_config(std::size_t phases, double t_end) {
    ScenarioConfig cfg;
    cfg.name = "bench";
    cfg.p_out = 200.0 * static_cast<double>(phases);
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
    cfg.sim.start = StartMode::Steady;
    cfg.faults = {FaultEvent{t_end / 2.0, 0, FaultTarget::MainSwitch, FaultKind::Short}};
    return cfg;
}

void BM_SimulateShortFault(benchmark::State& state) {
    const ScenarioConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)), 0.02);
    SimulateOptions opts;
    opts.keep_log = false;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.total_steps()));
}
BENCHMARK(BM_SimulateShortFault)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SimulateWithLog(benchmark::State& state) {
    ScenarioConfig cfg = bench_config(1, 0.02);
    cfg.sim.decimation = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.total_steps()));
}
BENCHMARK(BM_SimulateWithLog)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FuseStep(benchmark::State& state) {
    FuseDevice fuse;
    fuse.i2t_rating = 1e300;
    double i = 4.0;
    for (auto _ : state) {
        fuse = fuse_step(fuse, i, 2.5e-7);
        i = i < 20.0 ? i + 1e-3 : 4.0;
        benchmark::DoNotOptimize(fuse);
    }
}
BENCHMARK(BM_FuseStep);

void BM_CellResolve(benchmark::State& state) {
    const RedundantCell cell;
    const double t_sw = 50e-6, dt = t_sw / 200.0;
    std::size_t k = 0;
    for (auto _ : state) {
        const GatePair gates = cell_gates(static_cast<double>(k % 200) * dt, 0.75, t_sw, cell.t_d);
        benchmark::DoNotOptimize(cell_resolve(cell, gates, 4.0));
        ++k;
    }
}
BENCHMARK(BM_CellResolve);

}  // namespace

BENCHMARK_MAIN();
