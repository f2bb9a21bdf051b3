#include "ftboost/scenario_file.hpp"

#include "ftboost/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ftboost {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& msg) {
    throw ConfigError(ConfigError::Category::Schema, field, field + ": " + msg);
}

/// JSON object view that records which keys were read so leftovers can be
/// reported as unknown.
class Object {
public:
    Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) schema_error(path_, "expected an object");
    }

    Object(const Object&) = delete;
    Object& operator=(const Object&) = delete;

    [[nodiscard]] std::string field(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key) {
        used_.insert(key);
        if (!j_.contains(key)) schema_error(field(key), "missing required key");
        return j_.at(key);
    }

    double number(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) schema_error(field(key), "expected a number");
        return v.get<double>();
    }

    double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::size_t count(const std::string& key, std::size_t fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) schema_error(field(key), "expected a non-negative integer");
        return v.get<std::size_t>();
    }

    std::string text(const std::string& key) {
        const json& v = at(key);
        if (!v.is_string()) schema_error(field(key), "expected a string");
        return v.get<std::string>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        return has(key) ? text(key) : fallback;
    }

    const json& array(const std::string& key) {
        const json& v = at(key);
        if (!v.is_array()) schema_error(field(key), "expected an array");
        return v;
    }

    void check_unknown() const {
        for (const auto& [key, _] : j_.items())
            if (!used_.count(key)) schema_error(field(key), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

SwitchDevice parse_switch(const json& j, const std::string& path) {
    Object o(j, path);
    SwitchDevice sw;
    sw.r_on = o.number("r_on", sw.r_on);
    sw.v_drop = o.number("v_drop", sw.v_drop);
    sw.turn_on_time = o.number("turn_on_time", sw.turn_on_time);
    o.check_unknown();
    return sw;
}

FuseDevice parse_fuse(const json& j, const std::string& path) {
    Object o(j, path);
    FuseDevice f;
    f.i_rated = o.number("i_rated", f.i_rated);
    f.i2t_rating = o.number("i2t", f.i2t_rating);
    o.check_unknown();
    return f;
}

DiodeDevice parse_diode(const json& j, const std::string& path) {
    Object o(j, path);
    DiodeDevice d;
    d.v_f = o.number("v_f", d.v_f);
    d.r_on = o.number("r_on", d.r_on);
    o.check_unknown();
    return d;
}

std::pair<SwitchDevice, SwitchDevice> parse_pair(Object& o) {
    const json& devices = o.array("devices");
    if (devices.size() != 2) schema_error(o.field("devices"), "expected exactly two devices");
    return {parse_switch(devices[0], o.field("devices[0]")), parse_switch(devices[1], o.field("devices[1]"))};
}

SwitchArrangement parse_arrangement(const json& j, const std::string& path) {
    Object o(j, path);
    const std::string type = o.text("type");
    if (type == "single") {
        SingleSwitch s{o.has("device") ? parse_switch(o.at("device"), o.field("device")) : SwitchDevice{}};
        o.check_unknown();
        return s;
    }
    if (type == "series") {
        auto [a, b] = parse_pair(o);
        o.check_unknown();
        return SeriesPair{a, b};
    }
    if (type == "parallel") {
        auto [a, b] = parse_pair(o);
        o.check_unknown();
        return ParallelPair{a, b};
    }
    if (type == "redundant") {
        RedundantCell c;
        if (o.has("main")) c.main = parse_switch(o.at("main"), o.field("main"));
        if (o.has("reserve")) c.reserve = parse_switch(o.at("reserve"), o.field("reserve"));
        if (o.has("main_fuse")) c.main_fuse = parse_fuse(o.at("main_fuse"), o.field("main_fuse"));
        if (o.has("reserve_fuse")) c.reserve_fuse = parse_fuse(o.at("reserve_fuse"), o.field("reserve_fuse"));
        if (o.has("diode")) c.diode = parse_diode(o.at("diode"), o.field("diode"));
        if (o.has("relay")) {
            Object r(o.at("relay"), o.field("relay"));
            c.relay = RelayDevice{};
            c.relay->close_delay = r.number("close_delay", c.relay->close_delay);
            r.check_unknown();
        }
        c.t_d = o.number("t_d", c.t_d);
        o.check_unknown();
        return c;
    }
    schema_error(o.field("type"), "expected one of single, series, parallel, redundant (got \"" + type + "\")");
}

BoostPhaseParams parse_phase(const json& j, const std::string& path) {
    Object o(j, path);
    BoostPhaseParams ph;
    ph.l = o.number("l", ph.l);
    ph.r_l = o.number("r_l", ph.r_l);
    ph.carrier_phase = o.number("carrier_phase", ph.carrier_phase);
    if (o.has("out_diode")) ph.out_diode = parse_diode(o.at("out_diode"), o.field("out_diode"));
    if (o.has("arrangement")) ph.arrangement = parse_arrangement(o.at("arrangement"), o.field("arrangement"));
    o.check_unknown();
    return ph;
}

void parse_gains(Object& parent, const std::string& key, PiController& pi) {
    if (!parent.has(key)) return;
    Object o(parent.at(key), parent.field(key));
    pi.kp = o.number("kp", pi.kp);
    pi.ki = o.number("ki", pi.ki);
    o.check_unknown();
}

// Default loop gains: current loop ~1 kHz crossover, voltage loop ~100 Hz,
// at the 20 kHz / 1.8 mH / 470 uF reference design.
constexpr double kDefaultKpV = 1.2, kDefaultKiV = 150.0;
constexpr double kDefaultKpI = 0.08, kDefaultKiI = 75.0;
constexpr double kDefaultIMax = 6.0, kDefaultDMin = 0.05, kDefaultDMax = 0.9;
constexpr double kDefaultBaselineKp = 0.0, kDefaultBaselineKi = 0.005;

ControlMode parse_control(Object& o, ScenarioConfig& cfg) {
    const std::string mode = o.text("mode");
    if (mode == "cascade") {
        PiController v{kDefaultKpV, kDefaultKiV};
        PiController i{kDefaultKpI, kDefaultKiI};
        parse_gains(o, "voltage_loop", v);
        parse_gains(o, "current_loop", i);
        const double i_max = o.number("i_max", kDefaultIMax);
        const double d_min = o.number("d_min", kDefaultDMin);
        const double d_max = o.number("d_max", kDefaultDMax);
        const std::size_t window = o.count("sensor_window", cfg.steps_per_period());
        cfg.overcurrent_threshold = i_max;
        return CascadeMode{make_cascade(v.kp, v.ki, i.kp, i.ki, i_max, d_min, d_max, window)};
    }
    if (mode == "baseline") {
        BaselineController b;
        b.v_loop.kp = kDefaultBaselineKp;
        b.v_loop.ki = kDefaultBaselineKi;
        parse_gains(o, "voltage_loop", b.v_loop);
        b.d_min = o.number("d_min", kDefaultDMin);
        b.d_max = o.number("d_max", kDefaultDMax);
        b.detection_delay = o.number("detection_delay", cfg.converter.t_sw());
        b.duty_feedforward = 1.0 - cfg.converter.v_in / cfg.v_ref;
        cfg.overcurrent_threshold = o.number("i_max", kDefaultIMax);
        return BaselineMode{b};
    }
    if (mode == "open_loop") {
        OpenLoopFixedDuty d;
        d.duty = o.number("duty");
        cfg.overcurrent_threshold = o.number("i_max", kDefaultIMax);
        return d;
    }
    schema_error(o.field("mode"), "expected one of cascade, baseline, open_loop (got \"" + mode + "\")");
}

void parse_events(const json& events, ScenarioConfig& cfg) {
    for (std::size_t e = 0; e < events.size(); ++e) {
        Object o(events[e], "events[" + std::to_string(e) + "]");
        const std::string type = o.text("type");
        const double time = o.number("time");
        if (type == "fault") {
            FaultEvent f;
            f.time = time;
            f.phase_index = o.count("phase", 0);
            const std::string target = o.text("target");
            if (target == "main") f.target = FaultTarget::MainSwitch;
            else if (target == "reserve") f.target = FaultTarget::ReserveSwitch;
            else schema_error(o.field("target"), "expected main or reserve");
            const std::string kind = o.text("kind");
            if (kind == "open") f.kind = FaultKind::Open;
            else if (kind == "short") f.kind = FaultKind::Short;
            else schema_error(o.field("kind"), "expected open or short");
            cfg.faults.push_back(f);
        } else if (type == "load_step") {
            cfg.steps.push_back(StepEvent{time, LoadStep{o.number("r_load")}});
        } else if (type == "reference_step") {
            cfg.steps.push_back(StepEvent{time, ReferenceStep{o.number("v_ref")}});
        } else {
            schema_error(o.field("type"), "expected fault, load_step or reference_step");
        }
        o.check_unknown();
    }
}

ThermalSettings parse_thermal(const json& j) {
    Object o(j, "thermal");
    ThermalSettings t;
    const std::string model = o.text("model", "resistive");
    if (model == "resistive") t.model = ThermalSettings::Model::Resistive;
    else if (model == "fixed_drop") t.model = ThermalSettings::Model::FixedDrop;
    else if (model == "hybrid") t.model = ThermalSettings::Model::Hybrid;
    else schema_error(o.field("model"), "expected resistive, fixed_drop or hybrid");
    t.r_on = o.number("r_on", t.r_on);
    t.v_drop = o.number("v_drop", t.v_drop);
    t.e_on = o.number("e_on", t.e_on);
    t.e_off = o.number("e_off", t.e_off);
    t.r_th_j_hs = o.number("r_th_j_hs", t.r_th_j_hs);
    t.r_th_hs_amb = o.number("r_th_hs_amb", t.r_th_hs_amb);
    t.t_ambient = o.number("t_ambient", t.t_ambient);
    t.p_out = o.number("p_out", t.p_out);
    t.v_out = o.number("v_out", t.v_out);
    o.check_unknown();
    return t;
}

ScenarioConfig parse_document(const json& doc, std::string origin) {
    ScenarioConfig cfg;
    Object root(doc, "");
    {
        const json& v = root.at("schema_version");
        if (!v.is_number_integer() || v.get<int>() != kScenarioSchemaVersion)
            schema_error("schema_version", "expected " + std::to_string(kScenarioSchemaVersion));
    }
    cfg.name = root.text("name", origin);
    if (root.has("description")) root.text("description");

    {
        Object c(root.at("converter"), "converter");
        cfg.converter.v_in = c.number("v_in");
        cfg.v_ref = c.number("v_out");
        cfg.p_out = c.number("p_out");
        cfg.converter.c_out = c.number("c_out", cfg.converter.c_out);
        cfg.converter.f_sw = c.number("f_sw", cfg.converter.f_sw);
        if (cfg.p_out > 0.0) cfg.converter.r_load = cfg.v_ref * cfg.v_ref / cfg.p_out;
        c.check_unknown();
    }

    const json& phases = root.array("phases");
    for (std::size_t k = 0; k < phases.size(); ++k)
        cfg.converter.phases.push_back(parse_phase(phases[k], "phases[" + std::to_string(k) + "]"));

    {
        Object s(root.at("simulation"), "simulation");
        cfg.sim.t_end = s.number("t_end");
        cfg.sim.dt = s.number("dt", cfg.converter.t_sw() / 200.0);
        cfg.sim.decimation = s.count("decimation", 1);
        const std::string start = s.text("start", "cold");
        if (start == "cold") cfg.sim.start = StartMode::Cold;
        else if (start == "steady") cfg.sim.start = StartMode::Steady;
        else schema_error(s.field("start"), "expected cold or steady");
        if (s.has("initial_v_c")) cfg.sim.initial_v_c = s.number("initial_v_c");
        s.check_unknown();
    }
    // steps_per_period() below needs dt; check physics of dt before using it.
    if (!(cfg.sim.dt > 0.0) || !(cfg.converter.f_sw > 0.0))
        throw ConfigError(ConfigError::Category::Physics, "simulation.dt", "simulation.dt: must be positive");

    {
        Object c(root.at("control"), "control");
        cfg.control = parse_control(c, cfg);
        c.check_unknown();
    }
    if (root.has("events")) parse_events(root.array("events"), cfg);
    if (root.has("thermal")) cfg.thermal = parse_thermal(root.at("thermal"));

    root.check_unknown();
    validate(cfg);
    return cfg;
}

}  // namespace

ScenarioConfig parse_scenario_text(std::string_view text, std::string origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigError::Category::Syntax, "", origin + ": " + e.what());
    }
    return parse_document(doc, std::move(origin));
}

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(ConfigError::Category::Syntax, "", path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str(), path.stem().string());
}

}  // namespace ftboost
