#include "ftboost/report.hpp"

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>
#include <variant>

namespace ftboost {

namespace {

const char* status_name(ClearingStatus s) {
    switch (s) {
    case ClearingStatus::Cleared: return "cleared";
    case ClearingStatus::Unresolved: return "UNRESOLVED";
    case ClearingStatus::NotApplicable: return "n/a";
    }
    return "?";
}

std::string describe(const FaultEvent& f) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << (f.kind == FaultKind::Open ? "open" : "short") << " fault on "
       << (f.target == FaultTarget::MainSwitch ? "main" : "reserve") << " switch, phase " << f.phase_index
       << ", t=" << f.time << " s";
    return os.str();
}

std::string clearing_text(const TransitionMetrics& m) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (m.status == ClearingStatus::Cleared) {
        os << std::scientific << std::setprecision(3) << m.clearing_time << " s";
    } else {
        os << status_name(m.status);
    }
    return os.str();
}

std::string settling_text(const TransitionMetrics& m) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (m.settling_time) {
        os << std::scientific << std::setprecision(3) << *m.settling_time << " s";
    } else {
        os << "not settled";
    }
    return os.str();
}

struct Row {
    std::string label;
    std::string a;
    std::string b;
};

std::string num(double v, int precision = 4) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(precision) << v;
    return os.str();
}

std::vector<Row> comparison_rows(const TransitionMetrics* a, const TransitionMetrics* b) {
    auto pick = [](const TransitionMetrics* m, auto f) { return m ? f(*m) : std::string("-"); };
    return {
        {"clearing time", pick(a, clearing_text), pick(b, clearing_text)},
        {"reserve peak current [A]", pick(a, [](auto& m) { return num(m.reserve_peak_current); }),
         pick(b, [](auto& m) { return num(m.reserve_peak_current); })},
        {"reserve overcurrent stress [A s]", pick(a, [](auto& m) { return num(m.reserve_overcurrent_stress); }),
         pick(b, [](auto& m) { return num(m.reserve_overcurrent_stress); })},
        {"v_out min [V]", pick(a, [](auto& m) { return num(m.v_out_min, 5); }),
         pick(b, [](auto& m) { return num(m.v_out_min, 5); })},
        {"v_out max [V]", pick(a, [](auto& m) { return num(m.v_out_max, 5); }),
         pick(b, [](auto& m) { return num(m.v_out_max, 5); })},
        {"settling time (+/-2%)", pick(a, settling_text), pick(b, settling_text)},
    };
}

}  // namespace

std::string format_metrics(const ScenarioConfig& config, const SimulationResult& result) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "scenario: " << config.name << '\n';
    os << "steady window [" << result.summary.window_start << ", " << result.summary.window_end
       << "] s: mean v_c = " << std::setprecision(6) << result.summary.mean_v_c << " V";
    for (std::size_t p = 0; p < result.summary.mean_i_l.size(); ++p)
        os << ", mean i_l_" << p << " = " << result.summary.mean_i_l[p] << " A";
    os << '\n';
    if (result.metrics.empty()) {
        os << "no faults scheduled\n";
        return os.str();
    }
    for (const TransitionMetrics& m : result.metrics) {
        os << '\n' << describe(m.fault) << '\n';
        for (const Row& r : comparison_rows(&m, nullptr))
            os << "  " << std::left << std::setw(34) << r.label << r.a << '\n';
    }
    return os.str();
}

std::string format_comparison(const ComparisonReport& report) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    const std::size_t n = std::max(report.a.size(), report.b.size());
    os << std::left << std::setw(36) << "metric" << std::setw(24) << report.name_a << report.name_b << '\n';
    os << std::left << std::setw(36) << "steady mean v_c [V]" << std::setw(24) << num(report.summary_a.mean_v_c, 6)
       << num(report.summary_b.mean_v_c, 6) << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        const TransitionMetrics* a = i < report.a.size() ? &report.a[i] : nullptr;
        const TransitionMetrics* b = i < report.b.size() ? &report.b[i] : nullptr;
        os << '\n' << describe(a ? a->fault : b->fault) << '\n';
        for (const Row& r : comparison_rows(a, b))
            os << "  " << std::left << std::setw(34) << r.label << std::setw(24) << r.a << r.b << '\n';
    }
    os << "\nreference figures, not simulated: relay-based module isolation ~20 ms; "
          "relay-based phase reconfiguration ~5 ms\n";
    return os.str();
}

std::string format_comparison_csv(const ComparisonReport& report) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "fault,metric," << report.name_a << ',' << report.name_b << '\n';
    const std::size_t n = std::max(report.a.size(), report.b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const TransitionMetrics* a = i < report.a.size() ? &report.a[i] : nullptr;
        const TransitionMetrics* b = i < report.b.size() ? &report.b[i] : nullptr;
        for (const Row& r : comparison_rows(a, b)) os << i << ',' << r.label << ',' << r.a << ',' << r.b << '\n';
    }
    return os.str();
}

std::string format_thermal(const ThermalReport& report) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    const OperatingPoint& op = report.point;
    os << "operating point: v_in=" << op.v_in << " V, v_out=" << op.v_out << " V, p_out=" << op.p_out
       << " W, D=" << num(op.duty()) << ", switch i_rms=" << num(op.switch_rms()) << " A, i_avg="
       << num(op.switch_avg()) << " A\n";
    os << "loss model: " << to_string(report.model.kind) << " (r_on=" << report.model.r_on
       << " ohm, v_drop=" << report.model.v_drop << " V); network: r_th_j_hs=" << report.network.r_th_j_hs
       << " K/W, r_th_hs_amb=" << report.network.r_th_hs_amb << " K/W, T_a=" << report.network.t_ambient
       << " C\n\n";
    os << std::left << std::setw(12) << "arrangement" << std::setw(16) << "total loss [W]" << std::setw(18)
       << "T_heatsink [C]" << "max T_junction [C]\n";
    for (const ThermalRow& r : report.rows) {
        os << std::left << std::setw(12) << to_string(r.arrangement) << std::setw(16) << num(r.total_loss, 5)
           << std::setw(18) << num(r.temps.t_heatsink, 5) << num(r.temps.max_junction(), 5) << '\n';
    }
    if (!report.notes.empty()) os << '\n';
    for (const std::string& note : report.notes) os << "note: " << note << '\n';
    return os.str();
}

OperatingPoint thermal_operating_point(const ScenarioConfig& config) {
    const ThermalSettings t = config.thermal.value_or(ThermalSettings{});
    OperatingPoint op;
    op.v_in = config.converter.v_in;
    op.v_out = t.v_out;
    op.p_out = t.p_out;
    op.l = config.converter.phases.empty() ? op.l : config.converter.phases.front().l;
    op.f_sw = config.converter.f_sw;
    return op;
}

LossModel thermal_loss_model(const ScenarioConfig& config) {
    const ThermalSettings t = config.thermal.value_or(ThermalSettings{});
    LossModel m;
    switch (t.model) {
    case ThermalSettings::Model::Resistive: m.kind = LossModel::Kind::Resistive; break;
    case ThermalSettings::Model::FixedDrop: m.kind = LossModel::Kind::FixedDrop; break;
    case ThermalSettings::Model::Hybrid: m.kind = LossModel::Kind::Hybrid; break;
    }
    m.r_on = t.r_on;
    m.v_drop = t.v_drop;
    m.e_on = t.e_on;
    m.e_off = t.e_off;
    m.f_sw = config.converter.f_sw;
    return m;
}

ThermalNetwork thermal_network(const ScenarioConfig& config) {
    const ThermalSettings t = config.thermal.value_or(ThermalSettings{});
    return ThermalNetwork{t.r_th_j_hs, t.r_th_hs_amb, t.t_ambient};
}

SwitchCurrents measure_switch_currents(const ScenarioConfig& config, std::size_t phase) {
    const std::size_t total = config.total_steps();
    const std::size_t start = total - std::min(total, kSummaryPeriods * config.steps_per_period());
    double sum = 0.0, sum_sq = 0.0, sum_duty = 0.0;
    std::size_t count = 0;
    SimulateOptions opts;
    opts.keep_log = false;
    opts.observer = [&](const StepSample& s) {
        if (s.step < start || s.step >= total) return;
        const PhaseSample& p = s.phases.at(phase);
        sum += p.i_main;
        sum_sq += p.i_main * p.i_main;
        sum_duty += p.duty;
        ++count;
    };
    (void)simulate(config, opts);
    const double n = static_cast<double>(std::max<std::size_t>(count, 1));
    return {std::sqrt(sum_sq / n), sum / n, sum_duty / n};
}

}  // namespace ftboost
