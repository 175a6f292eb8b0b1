#include "ringsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringsim/error.hpp"
#include "ringsim/kinematics.hpp"

namespace ringsim {

std::string_view to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::I: return "I";
        case ScenarioId::II: return "II";
        case ScenarioId::III: return "III";
        case ScenarioId::IV: return "IV";
        case ScenarioId::Custom: return "custom";
    }
    return "?";
}

ScenarioId parse_scenario_id(std::string_view name) {
    for (auto id : {ScenarioId::I, ScenarioId::II, ScenarioId::III, ScenarioId::IV, ScenarioId::Custom}) {
        if (name == to_string(id)) return id;
    }
    throw ConfigError("scenario", "unknown scenario '" + std::string(name) +
                                      "' (expected I, II, III, IV or custom)");
}

std::string_view to_string(Powertrain p) { return p == Powertrain::EV ? "EV" : "ICE"; }

Powertrain parse_powertrain(std::string_view name) {
    if (name == "EV") return Powertrain::EV;
    if (name == "ICE") return Powertrain::ICE;
    throw ConfigError("fleet", "unknown fleet '" + std::string(name) + "' (expected EV or ICE)");
}

ScenarioDef ScenarioDef::builtin(ScenarioId id) {
    switch (id) {
        case ScenarioId::I: return {id, {1, 6}, {1}};
        case ScenarioId::II: return {id, {1, 3, 5, 7}, {1, 5}};
        case ScenarioId::III: return {id, {1, 3, 5, 7, 9}, {1, 5, 9}};
        case ScenarioId::IV: return {id, {1, 3, 5, 6, 7}, {1, 5, 6}};
        case ScenarioId::Custom: return {id, {}, {}};
    }
    return {};
}

double SimConfig::start_gap() const {
    return initial_gap.value_or(ring_length / n_vehicles - vehicle_length);
}

std::size_t SimConfig::tick_count() const {
    return static_cast<std::size_t>(std::llround(duration / dt));
}

bool SimConfig::is_acc(int vehicle) const {
    return std::binary_search(scenario.acc_ids.begin(), scenario.acc_ids.end(), vehicle);
}

const IdmParams& SimConfig::params_for(int vehicle) const {
    if (!is_acc(vehicle)) return hdv;
    return fleet == Powertrain::EV ? ev_acc : ice_acc;
}

void SimConfig::validate() const {
    if (n_vehicles < 1) throw ConfigError("n_vehicles", "n_vehicles ≥ 1");
    if (!(ring_length > 0.0)) throw ConfigError("ring_length", "ring_length > 0");
    if (!(vehicle_length >= 0.0)) throw ConfigError("vehicle_length", "vehicle_length ≥ 0");
    if (!(dt > 0.0)) throw ConfigError("dt", "dt > 0");
    if (!(duration > 0.0)) throw ConfigError("duration", "duration > 0");
    if (std::abs(static_cast<double>(tick_count()) * dt - duration) > 1e-9 * std::max(1.0, duration)) {
        throw ConfigError("duration", "duration must be a whole number of dt steps");
    }
    const double gap = start_gap();
    if (!(gap > 0.0)) throw ConfigError("ring_length", "initial gap must be positive");
    if (std::abs(n_vehicles * (gap + vehicle_length) - ring_length) > 1e-6) {
        throw ConfigError("initial_gap", "n_vehicles·(initial_gap + vehicle_length) = ring_length");
    }

    auto check_ids = [&](const std::vector<int>& ids, const char* field) {
        if (!std::is_sorted(ids.begin(), ids.end()) ||
            std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw ConfigError(std::string("scenario.") + field, "ids must be sorted and unique");
        }
        for (int id : ids) {
            if (id < 0 || id >= n_vehicles) {
                throw ConfigError(std::string("scenario.") + field,
                                  "id " + std::to_string(id) + " not in 0.." + std::to_string(n_vehicles - 1));
            }
        }
    };
    check_ids(scenario.acc_ids, "acc_ids");
    check_ids(scenario.attacked_ids, "attacked_ids");
    if (!std::includes(scenario.acc_ids.begin(), scenario.acc_ids.end(), scenario.attacked_ids.begin(),
                       scenario.attacked_ids.end())) {
        throw ConfigError("scenario.attacked_ids", "attacked_ids ⊆ acc_ids");
    }

    const TimeWindow* windows[] = {&phases.pre, &phases.during, &phases.post};
    for (const TimeWindow* w : windows) {
        if (!(w->start >= 0.0 && w->start < w->end)) {
            throw ConfigError("phases", "each phase needs 0 ≤ start < end");
        }
    }
    if (phases.pre.end > phases.during.start || phases.during.end > phases.post.start) {
        throw ConfigError("phases", "phase windows must be disjoint and ordered");
    }

    if (!(bounds.lower <= 0.0 && bounds.upper >= 0.0 && bounds.lower < bounds.upper)) {
        throw ConfigError("bounds", "xi ≤ 0 ≤ rho and xi < rho");
    }
    ev_acc.validate("params.ev_acc");
    ice_acc.validate("params.ice_acc");
    hdv.validate("params.hdv");
    if (!std::is_sorted(attack.targets.begin(), attack.targets.end()) ||
        std::adjacent_find(attack.targets.begin(), attack.targets.end()) != attack.targets.end()) {
        throw ConfigError("attack.targets", "targets must be sorted and unique");
    }
    attack.validate(n_vehicles);
}

std::vector<VehicleState> build_initial(const SimConfig& config) {
    config.validate();
    const double gap = config.start_gap();
    const double slot = gap + config.vehicle_length;
    std::vector<VehicleState> states(static_cast<std::size_t>(config.n_vehicles));
    for (int i = 0; i < config.n_vehicles; ++i) {
        VehicleState& s = states[i];
        s.id = i;
        // The predecessor (i - 1) sits one slot ahead.
        double pos = std::fmod(-i * slot, config.ring_length);
        if (pos < 0.0) pos += config.ring_length;
        s.position = pos;
        s.gap = gap;
        s.kind = config.is_acc(i) ? VehicleKind::Acc : VehicleKind::Hdv;
        s.powertrain = config.fleet;
    }
    return states;
}

std::optional<std::pair<int, int>> detect_collision(std::span<const VehicleState> states) {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].gap <= 0.0) {
            return std::pair{static_cast<int>(i), static_cast<int>(predecessor(i, states.size()))};
        }
    }
    return std::nullopt;
}

RunResult run(const SimConfig& config) {
    RunResult result;
    result.config = config;
    std::vector<VehicleState> states = build_initial(config);
    const int n = config.n_vehicles;
    const std::size_t ticks = config.tick_count();

    StateHistory history(config.dt);
    AttackScratch scratch(n);
    std::vector<double> accels(static_cast<std::size_t>(n));
    result.trajectory.reserve(ticks + 1);
    result.trajectory.push_back({0.0, states});

    for (std::size_t tick = 0; tick < ticks; ++tick) {
        const double t = static_cast<double>(tick) * config.dt;
        history.record(states);
        const WorldView world{states, history, config.vehicle_length, t};
        scratch.observe(world, config.attack);
        for (int i = 0; i < n; ++i) {
            const ControllerInputs in = controller_inputs(world, config.attack, scratch, i);
            accels[i] = idm_accel(config.params_for(i), in.speed, in.gap, in.relative_speed, config.bounds);
        }
        states = euler_step(states, accels, config.dt, config.ring_length);
        const double t_next = static_cast<double>(tick + 1) * config.dt;
        result.trajectory.push_back({t_next, states});
        if (auto hit = detect_collision(states)) {
            result.collision = Collision{t_next, hit->first, hit->second};
            break;
        }
    }
    return result;
}

}  // namespace ringsim
