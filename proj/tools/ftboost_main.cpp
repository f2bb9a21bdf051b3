// ftboost: run, compare and inspect redundant-switch boost converter scenarios.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime failure
// (numerical blowup or I/O).

#include "ftboost/errors.hpp"
#include "ftboost/metrics.hpp"
#include "ftboost/report.hpp"
#include "ftboost/scenario_file.hpp"
#include "ftboost/simulate.hpp"
#include "ftboost/thermal.hpp"
#include "ftboost/waveform_csv.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int cmd_validate(const std::string& path) {
    const ftboost::ScenarioConfig cfg = ftboost::parse_scenario(path);
    std::cout << cfg.name << ": ok (" << cfg.converter.phases.size() << " phase(s), "
              << cfg.total_steps() << " steps, " << cfg.faults.size() << " fault(s), " << cfg.steps.size()
              << " step event(s))\n";
    return kExitOk;
}

int cmd_run(const std::string& path, const fs::path& out_dir) {
    const ftboost::ScenarioConfig cfg = ftboost::parse_scenario(path);
    const ftboost::SimulationResult result = ftboost::simulate(cfg);
    const std::string metrics = ftboost::format_metrics(cfg, result);
    std::cout << metrics;

    fs::create_directories(out_dir);
    ftboost::write_waveforms(result.log, out_dir / "waveforms.csv");
    std::ofstream m(out_dir / "metrics.txt", std::ios::binary | std::ios::trunc);
    m << metrics;
    if (!m) throw std::runtime_error((out_dir / "metrics.txt").string() + ": write failed");
    return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, bool csv) {
    const ftboost::ScenarioConfig ca = ftboost::parse_scenario(a);
    const ftboost::ScenarioConfig cb = ftboost::parse_scenario(b);
    const ftboost::ComparisonReport report = ftboost::compare_runs(ca, cb);
    std::cout << (csv ? ftboost::format_comparison_csv(report) : ftboost::format_comparison(report));
    return kExitOk;
}

int cmd_thermal(const std::string& path, bool from_simulation) {
    const ftboost::ScenarioConfig cfg = ftboost::parse_scenario(path);
    const ftboost::OperatingPoint op = ftboost::thermal_operating_point(cfg);
    const ftboost::LossModel model = ftboost::thermal_loss_model(cfg);
    const ftboost::ThermalNetwork net = ftboost::thermal_network(cfg);
    if (from_simulation) {
        const ftboost::SwitchCurrents sc = ftboost::measure_switch_currents(cfg);
        std::cout << "switch currents measured from simulation (final " << ftboost::kSummaryPeriods
                  << " periods)\n";
        std::cout << ftboost::format_thermal(ftboost::thermal_compare(op, sc.i_rms, sc.i_avg, model, net));
    } else {
        std::cout << ftboost::format_thermal(ftboost::thermal_compare(op, model, net));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fault-injection simulator for boost converters with redundant switch cells"};
    app.require_subcommand(1);

    std::string scenario, scenario_b;
    std::string out_dir = ".";
    bool csv = false;
    bool from_simulation = false;

    auto* run = app.add_subcommand("run", "Simulate a scenario, write waveforms.csv and metrics.txt");
    run->add_option("scenario", scenario, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Run two scenarios on the same plant and tabulate metrics");
    compare->add_option("scenario_a", scenario, "First scenario")->required();
    compare->add_option("scenario_b", scenario_b, "Second scenario")->required();
    compare->add_flag("--csv", csv, "Emit CSV instead of a text table");

    auto* thermal = app.add_subcommand("thermal", "Steady-state thermal comparison of switch arrangements");
    thermal->add_option("scenario", scenario, "Scenario JSON file")->required();
    thermal->add_flag("--from-simulation", from_simulation, "Use switch currents from a simulated run");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    validate->add_option("scenario", scenario, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(scenario, out_dir);
        if (*compare) return cmd_compare(scenario, scenario_b, csv);
        if (*thermal) return cmd_thermal(scenario, from_simulation);
        if (*validate) return cmd_validate(scenario);
    } catch (const ftboost::ConfigError& e) {
        std::cerr << "error (" << ftboost::to_string(e.category()) << "): " << e.what() << '\n';
        return kExitConfig;
    } catch (const ftboost::NumericalBlowup& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
