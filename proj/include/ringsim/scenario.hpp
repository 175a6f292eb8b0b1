#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ringsim/attack.hpp"
#include "ringsim/idm.hpp"
#include "ringsim/vehicle.hpp"

namespace ringsim {

enum class ScenarioId { I, II, III, IV, Custom };

std::string_view to_string(ScenarioId id);
ScenarioId parse_scenario_id(std::string_view name);  // throws ConfigError
std::string_view to_string(Powertrain p);
Powertrain parse_powertrain(std::string_view name);  // throws ConfigError

struct ScenarioDef {
    ScenarioId id = ScenarioId::I;
    std::vector<int> acc_ids;
    std::vector<int> attacked_ids;

    // I: acc {1,6} attacked {1}; II: {1,3,5,7} / {1,5};
    // III: {1,3,5,7,9} / {1,5,9}; IV: {1,3,5,6,7} / {1,5,6}.
    static ScenarioDef builtin(ScenarioId id);

    friend bool operator==(const ScenarioDef&, const ScenarioDef&) = default;
};

struct PhaseWindows {
    TimeWindow pre{30.0, 60.0};
    TimeWindow during{60.0, 90.0};
    TimeWindow post{90.0, 120.0};  // closed at the run duration

    friend bool operator==(const PhaseWindows&, const PhaseWindows&) = default;
};

struct SimConfig {
    ScenarioDef scenario = ScenarioDef::builtin(ScenarioId::I);
    Powertrain fleet = Powertrain::EV;
    int n_vehicles = 10;
    double ring_length = 300.0;
    double vehicle_length = 5.0;
    double dt = 1.0 / 30.0;
    double duration = 120.0;
    std::optional<double> initial_gap;  // derived from the ring when unset
    PhaseWindows phases;
    AttackSpec attack;
    AccelBounds bounds;
    IdmParams ev_acc = preset(ParamSet::EvAcc);
    IdmParams ice_acc = preset(ParamSet::IceAcc);
    IdmParams hdv = preset(ParamSet::Hdv);

    // Uniform starting gap: ring_length / n - vehicle_length.
    double start_gap() const;
    std::size_t tick_count() const;  // number of steps, round(duration / dt)
    const IdmParams& params_for(int vehicle) const;
    bool is_acc(int vehicle) const;

    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct Collision {
    double time = 0.0;
    int follower = 0;
    int leader = 0;
};

struct Frame {
    double t = 0.0;
    std::vector<VehicleState> vehicles;
};

struct RunResult {
    std::vector<Frame> trajectory;  // ends at the collision tick if any
    std::optional<Collision> collision;
    SimConfig config;
};

std::vector<VehicleState> build_initial(const SimConfig& config);

// First vehicle (lowest id) with gap <= 0, paired with its predecessor.
std::optional<std::pair<int, int>> detect_collision(std::span<const VehicleState> states);

RunResult run(const SimConfig& config);

}  // namespace ringsim
