#include "ringsim/attack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringsim/error.hpp"

namespace ringsim {

namespace {

// Tick times are n*dt and carry rounding noise; comparisons against window
// edges and whole seconds treat values within this tolerance as equal.
constexpr double kTimeEps = 1e-9;

int wrap(int i, int n) { return ((i % n) + n) % n; }

double floor_gap(double gap) { return std::max(gap, kMinPerceivedGap); }

const Snapshot& delayed_snapshot(const WorldView& world, const AttackSpec& spec) {
    const double when = std::floor(world.t - spec.delay_m + kTimeEps);
    if (when < 0.0) {
        throw QueryOutOfRange("delayed lookup before t=0 (t=" + std::to_string(world.t) +
                              ", m=" + std::to_string(spec.delay_m) + ")");
    }
    return world.history.lookup(when);
}

}  // namespace

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::None: return "None";
        case AttackKind::DPDA: return "DPDA";
        case AttackKind::PA: return "PA";
        case AttackKind::FA: return "FA";
        case AttackKind::BA: return "BA";
        case AttackKind::AVA: return "AVA";
        case AttackKind::MA: return "MA";
    }
    return "?";
}

AttackKind parse_attack_kind(std::string_view name) {
    for (auto kind : {AttackKind::None, AttackKind::DPDA, AttackKind::PA, AttackKind::FA,
                      AttackKind::BA, AttackKind::AVA, AttackKind::MA}) {
        if (name == to_string(kind)) return kind;
    }
    throw ConfigError("attack.kind", "unknown attack kind '" + std::string(name) +
                                         "' (expected None, DPDA, PA, FA, BA, AVA or MA)");
}

int AttackSpec::source_for(int target, int n_vehicles) const {
    if (auto it = source_map.find(target); it != source_map.end()) return it->second;
    return wrap(target - 1, n_vehicles);
}

void AttackSpec::validate(int n_vehicles) const {
    if (!(window.start >= 0.0)) throw ConfigError("attack.window", "t_start ≥ 0");
    if (!(window.start < window.end)) throw ConfigError("attack.window", "t_start < t_end");
    if (!(delay_m >= 0.0)) throw ConfigError("attack.delay_m", "delay_m ≥ 0");
    if (blinded_p < 0) throw ConfigError("attack.blinded_p", "blinded_p ≥ 0");
    if (!(spacing_cap_phi > 0.0)) throw ConfigError("attack.spacing_cap_phi", "spacing_cap_phi > 0");
    if (!std::isfinite(gain_k)) throw ConfigError("attack.gain_k", "gain_k must be finite");
    if (!std::isfinite(angle_rate_omega)) {
        throw ConfigError("attack.angle_rate_omega", "angle_rate_omega must be finite");
    }
    for (int id : targets) {
        if (id < 0 || id >= n_vehicles) {
            throw ConfigError("attack.targets", "target " + std::to_string(id) + " not in 0.." +
                                                    std::to_string(n_vehicles - 1));
        }
    }
    for (const auto& [target, source] : source_map) {
        if (target < 0 || target >= n_vehicles || source < 0 || source >= n_vehicles) {
            throw ConfigError("attack.source_map", "vehicle ids must lie in 0.." +
                                                       std::to_string(n_vehicles - 1));
        }
    }
}

bool is_active(const AttackSpec& spec, int vehicle, double t) {
    if (spec.kind == AttackKind::None) return false;
    if (!std::binary_search(spec.targets.begin(), spec.targets.end(), vehicle)) return false;
    return t >= spec.window.start - kTimeEps && t < spec.window.end - kTimeEps;
}

ControllerInputs true_inputs(const WorldView& world, int i) {
    const auto& v = world.vehicles;
    const auto& self = v[i];
    const auto& lead = v[predecessor(i, v.size())];
    return {self.speed, self.gap, lead.speed - self.speed};
}

ControllerInputs dpda_inputs(const WorldView& world, const AttackSpec& spec, int i) {
    const Snapshot& past = delayed_snapshot(world, spec);
    const std::size_t lead = predecessor(i, world.vehicles.size());
    return {world.vehicles[i].speed, floor_gap(past.gaps[i]), past.speeds[lead] - past.speeds[i]};
}

ControllerInputs pa_inputs(const WorldView& world, const AttackSpec& spec, int i) {
    const auto& v = world.vehicles;
    const int j = spec.source_for(i, world.size());
    const auto& src = v[j];
    const auto& src_lead = v[predecessor(j, v.size())];
    return {v[i].speed, floor_gap(src.gap), src_lead.speed - src.speed};
}

ControllerInputs fa_inputs(const WorldView& world, const AttackSpec& spec, int i, double v_frozen) {
    (void)spec;
    ControllerInputs in = true_inputs(world, i);
    in.speed = v_frozen;
    return in;
}

double ba_perceived_spacing(const WorldView& world, const AttackSpec& spec, int i) {
    const int n = world.size();
    double raw = 0.0;
    for (int z = 0; z <= spec.blinded_p; ++z) raw += world.vehicles[wrap(i - z, n)].gap;
    if (!spec.ba_gaps_only) raw += spec.blinded_p * world.vehicle_length;
    const double phi = spec.spacing_cap_phi;
    return std::min(std::max(raw, std::min(kMinPerceivedGap, phi)), phi);
}

ControllerInputs ba_inputs(const WorldView& world, const AttackSpec& spec, int i) {
    const int j = wrap(i - spec.blinded_p - 1, world.size());
    const double own = world.vehicles[i].speed;
    return {own, ba_perceived_spacing(world, spec, i), world.vehicles[j].speed - own};
}

ControllerInputs ava_inputs(const WorldView& world, const AttackSpec& spec, int i) {
    const double angle = spec.angle_rate_omega * (world.t - spec.window.start);
    const double wave = spec.ava_form == AvaForm::Sin ? std::sin(angle) : std::cos(angle);
    ControllerInputs in = true_inputs(world, i);
    in.speed *= 1.0 + spec.gain_k * wave;
    return in;
}

ControllerInputs ma_inputs(const WorldView& world, const AttackSpec& spec, int i) {
    const Snapshot& past = delayed_snapshot(world, spec);
    const int j = spec.source_for(i, world.size());
    const std::size_t src_lead = predecessor(j, world.vehicles.size());
    return {world.vehicles[i].speed, floor_gap(past.gaps[j]), past.speeds[src_lead] - past.speeds[j]};
}

AttackScratch::AttackScratch(int n_vehicles)
    : frozen_(static_cast<std::size_t>(n_vehicles), 0.0),
      captured_(static_cast<std::size_t>(n_vehicles), false) {}

void AttackScratch::observe(const WorldView& world, const AttackSpec& spec) {
    if (spec.kind != AttackKind::FA) return;
    for (int id : spec.targets) {
        if (!captured_[id] && is_active(spec, id, world.t)) {
            frozen_[id] = world.vehicles[id].speed;
            captured_[id] = true;
        }
    }
}

double AttackScratch::frozen_speed(int i) const { return frozen_.at(i); }

ControllerInputs controller_inputs(const WorldView& world, const AttackSpec& spec,
                                   const AttackScratch& scratch, int i) {
    if (!is_active(spec, i, world.t)) return true_inputs(world, i);
    switch (spec.kind) {
        case AttackKind::None: return true_inputs(world, i);
        case AttackKind::DPDA: return dpda_inputs(world, spec, i);
        case AttackKind::PA: return pa_inputs(world, spec, i);
        case AttackKind::FA: return fa_inputs(world, spec, i, scratch.frozen_speed(i));
        case AttackKind::BA: return ba_inputs(world, spec, i);
        case AttackKind::AVA: return ava_inputs(world, spec, i);
        case AttackKind::MA: return ma_inputs(world, spec, i);
    }
    return true_inputs(world, i);
}

}  // namespace ringsim
