#include "ringsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "ringsim/error.hpp"

namespace ringsim {

namespace {

int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
    throw ConfigError(field, what, line_of(node));
}

void require_map(const YAML::Node& node, const std::string& field) {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
}

void reject_unknown(const YAML::Node& map, const std::string& prefix,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(kv.first, prefix.empty() ? key : prefix + "." + key, "unknown key");
        }
    }
}

std::string join(const std::string& prefix, const char* key) {
    return prefix.empty() ? std::string(key) : prefix + "." + key;
}

std::string scalar(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    return node.Scalar();
}

// Accepts plain numbers and simple fractions such as "1/30".
double number(const YAML::Node& node, const std::string& field) {
    const std::string text = scalar(node, field);
    auto parse = [&](std::string_view s) {
        double v = 0.0;
        const auto* first = s.data();
        const auto* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) fail(node, field, "expected a number, got '" + text + "'");
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        const double den = parse(std::string_view(text).substr(slash + 1));
        if (den == 0.0) fail(node, field, "zero denominator");
        return parse(std::string_view(text).substr(0, slash)) / den;
    }
    return parse(text);
}

int integer(const YAML::Node& node, const std::string& field) {
    const std::string text = scalar(node, field);
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(node, field, "expected an integer, got '" + text + "'");
    }
    return v;
}

bool boolean(const YAML::Node& node, const std::string& field) {
    const std::string text = scalar(node, field);
    if (text == "true") return true;
    if (text == "false") return false;
    fail(node, field, "expected true or false, got '" + text + "'");
}

std::vector<int> id_list(const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence()) fail(node, field, "expected a list of vehicle ids");
    std::vector<int> ids;
    for (const auto& item : node) ids.push_back(integer(item, field));
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail(node, field, "duplicate vehicle id");
    return ids;
}

TimeWindow window(const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence() || node.size() != 2) fail(node, field, "expected [start, end]");
    return {number(node[0], field), number(node[1], field)};
}

// Rethrows ConfigError from semantic validation with the node's line attached.
template <class Fn>
auto at_node(const YAML::Node& node, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        if (e.line() > 0) throw;
        throw ConfigError(e.field(), e.message(), line_of(node));
    }
}

ScenarioDef parse_scenario(const YAML::Node& node) {
    if (node.IsScalar()) {
        return at_node(node, [&] { return ScenarioDef::builtin(parse_scenario_id(node.Scalar())); });
    }
    require_map(node, "scenario");
    reject_unknown(node, "scenario", {"id", "acc_ids", "attacked_ids"});
    ScenarioDef def;
    if (node["id"]) {
        def = at_node(node["id"], [&] { return ScenarioDef::builtin(parse_scenario_id(scalar(node["id"], "scenario.id"))); });
    } else {
        def = ScenarioDef::builtin(ScenarioId::Custom);
    }
    if (node["acc_ids"]) def.acc_ids = id_list(node["acc_ids"], "scenario.acc_ids");
    if (node["attacked_ids"]) def.attacked_ids = id_list(node["attacked_ids"], "scenario.attacked_ids");
    return def;
}

void apply_params(const YAML::Node& node, const std::string& field, IdmParams& p) {
    require_map(node, field);
    reject_unknown(node, field, {"alpha", "beta", "kappa", "eta", "tau", "v_d"});
    if (node["alpha"]) p.alpha = number(node["alpha"], field + ".alpha");
    if (node["beta"]) p.beta = number(node["beta"], field + ".beta");
    if (node["kappa"]) p.kappa = number(node["kappa"], field + ".kappa");
    if (node["eta"]) p.eta = number(node["eta"], field + ".eta");
    if (node["tau"]) p.tau = number(node["tau"], field + ".tau");
    if (node["v_d"]) p.v_desired = number(node["v_d"], field + ".v_d");
    at_node(node, [&] { p.validate(field); return 0; });
}

AttackSpec parse_attack(const YAML::Node& node, const std::string& field) {
    require_map(node, field);
    reject_unknown(node, field,
                   {"kind", "targets", "window", "delay_m", "blinded_p", "spacing_cap_phi", "ba_gaps_only",
                    "gain_k", "angle_rate_omega", "ava_form", "source_map"});
    AttackSpec spec;
    if (!node["kind"]) fail(node, field + ".kind", "missing required key");
    spec.kind = at_node(node["kind"], [&] { return parse_attack_kind(scalar(node["kind"], field + ".kind")); });
    if (node["targets"]) spec.targets = id_list(node["targets"], field + ".targets");
    if (node["window"]) spec.window = window(node["window"], field + ".window");
    if (node["delay_m"]) spec.delay_m = number(node["delay_m"], field + ".delay_m");
    if (node["blinded_p"]) spec.blinded_p = integer(node["blinded_p"], field + ".blinded_p");
    if (node["spacing_cap_phi"]) spec.spacing_cap_phi = number(node["spacing_cap_phi"], field + ".spacing_cap_phi");
    if (node["ba_gaps_only"]) spec.ba_gaps_only = boolean(node["ba_gaps_only"], field + ".ba_gaps_only");
    if (node["gain_k"]) spec.gain_k = number(node["gain_k"], field + ".gain_k");
    if (node["angle_rate_omega"]) spec.angle_rate_omega = number(node["angle_rate_omega"], field + ".angle_rate_omega");
    if (node["ava_form"]) {
        const auto form = scalar(node["ava_form"], field + ".ava_form");
        if (form == "sin") spec.ava_form = AvaForm::Sin;
        else if (form == "cos") spec.ava_form = AvaForm::Cos;
        else fail(node["ava_form"], field + ".ava_form", "expected sin or cos");
    }
    if (const auto map = node["source_map"]) {
        require_map(map, field + ".source_map");
        for (const auto& kv : map) {
            spec.source_map[integer(kv.first, field + ".source_map")] = integer(kv.second, field + ".source_map");
        }
    }
    // Range checks that need n_vehicles run later in SimConfig::validate.
    if (!(spec.delay_m >= 0.0)) fail(node["delay_m"], field + ".delay_m", "delay_m ≥ 0");
    if (spec.blinded_p < 0) fail(node["blinded_p"], field + ".blinded_p", "blinded_p ≥ 0");
    if (!(spec.spacing_cap_phi > 0.0)) fail(node["spacing_cap_phi"], field + ".spacing_cap_phi", "spacing_cap_phi > 0");
    if (node["window"] && !(spec.window.start < spec.window.end)) {
        fail(node["window"], field + ".window", "t_start < t_end");
    }
    return spec;
}

// Keys shared by a single-run document and a sweep's base section.
constexpr std::array<std::string_view, 9> kBaseKeys = {
    "n_vehicles", "ring_length", "vehicle_length", "dt", "duration", "initial_gap", "phases", "bounds", "params"};

void apply_base(const YAML::Node& root, SimConfig& c) {
    if (root["n_vehicles"]) c.n_vehicles = integer(root["n_vehicles"], "n_vehicles");
    if (root["ring_length"]) c.ring_length = number(root["ring_length"], "ring_length");
    if (root["vehicle_length"]) c.vehicle_length = number(root["vehicle_length"], "vehicle_length");
    if (root["dt"]) c.dt = number(root["dt"], "dt");
    if (root["duration"]) c.duration = number(root["duration"], "duration");
    if (root["initial_gap"]) c.initial_gap = number(root["initial_gap"], "initial_gap");
    if (const auto ph = root["phases"]) {
        require_map(ph, "phases");
        reject_unknown(ph, "phases", {"pre", "during", "post"});
        if (ph["pre"]) c.phases.pre = window(ph["pre"], "phases.pre");
        if (ph["during"]) c.phases.during = window(ph["during"], "phases.during");
        if (ph["post"]) c.phases.post = window(ph["post"], "phases.post");
    }
    if (const auto b = root["bounds"]) {
        require_map(b, "bounds");
        reject_unknown(b, "bounds", {"xi", "rho"});
        if (b["xi"]) c.bounds.lower = number(b["xi"], "bounds.xi");
        if (b["rho"]) c.bounds.upper = number(b["rho"], "bounds.rho");
    }
    if (const auto p = root["params"]) {
        require_map(p, "params");
        reject_unknown(p, "params", {"ev_acc", "ice_acc", "hdv"});
        if (p["ev_acc"]) apply_params(p["ev_acc"], "params.ev_acc", c.ev_acc);
        if (p["ice_acc"]) apply_params(p["ice_acc"], "params.ice_acc", c.ice_acc);
        if (p["hdv"]) apply_params(p["hdv"], "params.hdv", c.hdv);
    }
}

YAML::Node load(std::string_view text) {
    try {
        YAML::Node root = YAML::Load(std::string(text));
        if (root.IsNull()) return YAML::Node(YAML::NodeType::Map);
        if (!root.IsMap()) throw ConfigError("", "top level must be a mapping", line_of(root));
        return root;
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", "parse error: " + e.msg, e.mark.line + 1);
    }
}

SimConfig sim_from(const YAML::Node& root) {
    std::vector<std::string_view> allowed{"scenario", "fleet", "attack"};
    allowed.insert(allowed.end(), kBaseKeys.begin(), kBaseKeys.end());
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(kv.first, key, "unknown key");
    }
    SimConfig c;
    if (root["scenario"]) c.scenario = parse_scenario(root["scenario"]);
    if (root["fleet"]) c.fleet = at_node(root["fleet"], [&] { return parse_powertrain(scalar(root["fleet"], "fleet")); });
    apply_base(root, c);
    if (root["attack"]) c.attack = parse_attack(root["attack"], "attack");
    c = resolve(std::move(c));
    at_node(root, [&] { c.validate(); return 0; });
    return c;
}

SweepSpec sweep_from(const YAML::Node& root) {
    std::vector<std::string_view> allowed{"sweep"};
    allowed.insert(allowed.end(), kBaseKeys.begin(), kBaseKeys.end());
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(kv.first, key, "unknown key");
    }
    const YAML::Node s = root["sweep"];
    require_map(s, "sweep");
    reject_unknown(s, "sweep", {"scenarios", "fleets", "attacks", "output_dir"});
    SweepSpec spec;
    apply_base(root, spec.base);
    auto seq = [&](const char* key) {
        const YAML::Node n = s[key];
        if (!n) fail(s, join("sweep", key), "missing required key");
        if (!n.IsSequence() || n.size() == 0) fail(n, join("sweep", key), "expected a non-empty list");
        return n;
    };
    for (const auto& item : seq("scenarios")) {
        spec.scenarios.push_back(at_node(item, [&] { return parse_scenario_id(scalar(item, "sweep.scenarios")); }));
    }
    for (const auto& item : seq("fleets")) {
        spec.fleets.push_back(at_node(item, [&] { return parse_powertrain(scalar(item, "sweep.fleets")); }));
    }
    for (const auto& item : seq("attacks")) spec.attacks.push_back(parse_attack(item, "sweep.attacks"));
    if (s["output_dir"]) spec.output_dir = scalar(s["output_dir"], "sweep.output_dir");
    at_node(s, [&] { spec.validate(); return 0; });
    return spec;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_ids(const std::vector<int>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(ids[i]);
    }
    return out + "]";
}

std::string fmt_window(const TimeWindow& w) { return "[" + fmt_double(w.start) + ", " + fmt_double(w.end) + "]"; }

void emit_params(std::ostringstream& os, const char* name, const IdmParams& p) {
    os << "  " << name << ": {alpha: " << fmt_double(p.alpha) << ", beta: " << fmt_double(p.beta)
       << ", kappa: " << fmt_double(p.kappa) << ", eta: " << fmt_double(p.eta) << ", tau: " << fmt_double(p.tau)
       << ", v_d: " << fmt_double(p.v_desired) << "}\n";
}

}  // namespace

void SweepSpec::validate() const {
    if (scenarios.empty()) throw ConfigError("sweep.scenarios", "at least one scenario");
    if (fleets.empty()) throw ConfigError("sweep.fleets", "at least one fleet");
    if (attacks.empty()) throw ConfigError("sweep.attacks", "at least one attack");
    if (std::find(scenarios.begin(), scenarios.end(), ScenarioId::Custom) != scenarios.end()) {
        throw ConfigError("sweep.scenarios", "sweeps run built-in scenarios only");
    }
    for (auto id : scenarios) {
        for (auto fleet : fleets) {
            for (const auto& a : attacks) {
                SimConfig c = base;
                c.scenario = ScenarioDef::builtin(id);
                c.fleet = fleet;
                c.attack = a;
                resolve(std::move(c)).validate();
            }
        }
    }
}

SimConfig resolve(SimConfig config) {
    if (config.attack.kind != AttackKind::None && config.attack.targets.empty()) {
        config.attack.targets = config.scenario.attacked_ids;
    }
    return config;
}

ConfigDocument parse_config(std::string_view text) {
    const YAML::Node root = load(text);
    try {
        if (root["sweep"]) return sweep_from(root);
        return sim_from(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError("", e.msg, e.mark.line + 1);
    }
}

SimConfig parse_sim_config(std::string_view text) {
    auto doc = parse_config(text);
    if (auto* c = std::get_if<SimConfig>(&doc)) return *c;
    throw ConfigError("sweep", "expected a single-run config, got a sweep document");
}

SweepSpec parse_sweep_spec(std::string_view text) {
    auto doc = parse_config(text);
    if (auto* s = std::get_if<SweepSpec>(&doc)) return *s;
    throw ConfigError("sweep", "missing top-level 'sweep' section");
}

std::string to_yaml(const SimConfig& c) {
    std::ostringstream os;
    os << "scenario:\n  id: " << to_string(c.scenario.id) << "\n  acc_ids: " << fmt_ids(c.scenario.acc_ids)
       << "\n  attacked_ids: " << fmt_ids(c.scenario.attacked_ids) << "\n";
    os << "fleet: " << to_string(c.fleet) << "\n";
    os << "n_vehicles: " << c.n_vehicles << "\n";
    os << "ring_length: " << fmt_double(c.ring_length) << "\n";
    os << "vehicle_length: " << fmt_double(c.vehicle_length) << "\n";
    os << "dt: " << fmt_double(c.dt) << "\n";
    os << "duration: " << fmt_double(c.duration) << "\n";
    if (c.initial_gap) os << "initial_gap: " << fmt_double(*c.initial_gap) << "\n";
    os << "phases:\n  pre: " << fmt_window(c.phases.pre) << "\n  during: " << fmt_window(c.phases.during)
       << "\n  post: " << fmt_window(c.phases.post) << "\n";
    os << "bounds: {xi: " << fmt_double(c.bounds.lower) << ", rho: " << fmt_double(c.bounds.upper) << "}\n";
    os << "params:\n";
    emit_params(os, "ev_acc", c.ev_acc);
    emit_params(os, "ice_acc", c.ice_acc);
    emit_params(os, "hdv", c.hdv);
    const AttackSpec& a = c.attack;
    os << "attack:\n  kind: " << to_string(a.kind) << "\n  targets: " << fmt_ids(a.targets)
       << "\n  window: " << fmt_window(a.window) << "\n  delay_m: " << fmt_double(a.delay_m)
       << "\n  blinded_p: " << a.blinded_p << "\n  spacing_cap_phi: " << fmt_double(a.spacing_cap_phi)
       << "\n  ba_gaps_only: " << (a.ba_gaps_only ? "true" : "false") << "\n  gain_k: " << fmt_double(a.gain_k)
       << "\n  angle_rate_omega: " << fmt_double(a.angle_rate_omega)
       << "\n  ava_form: " << (a.ava_form == AvaForm::Sin ? "sin" : "cos") << "\n  source_map: {";
    bool first = true;
    for (const auto& [target, source] : a.source_map) {
        os << (first ? "" : ", ") << target << ": " << source;
        first = false;
    }
    os << "}\n";
    return os.str();
}

}  // namespace ringsim
