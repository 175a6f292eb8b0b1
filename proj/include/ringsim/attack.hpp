#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringsim/history.hpp"
#include "ringsim/vehicle.hpp"

namespace ringsim {

enum class AttackKind { None, DPDA, PA, FA, BA, AVA, MA };
enum class AvaForm { Sin, Cos };

std::string_view to_string(AttackKind kind);
AttackKind parse_attack_kind(std::string_view name);  // throws ConfigError

// Half-open time interval [start, end), seconds.
struct TimeWindow {
    double start = 0.0;
    double end = 0.0;

    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// Perceived spacing never drops below this before entering the controller.
inline constexpr double kMinPerceivedGap = 0.1;

struct AttackSpec {
    AttackKind kind = AttackKind::None;
    std::vector<int> targets;  // sorted, unique
    TimeWindow window{60.0, 90.0};

    double delay_m = 0.0;           // DPDA, MA
    int blinded_p = 0;              // BA
    double spacing_cap_phi = 50.0;  // BA
    bool ba_gaps_only = false;      // BA: sum gaps only, no vehicle lengths
    double gain_k = 0.002;          // AVA
    double angle_rate_omega = 1.0;  // AVA, rad/s
    AvaForm ava_form = AvaForm::Sin;
    std::map<int, int> source_map;  // PA, MA: target -> source vehicle

    // Source vehicle j for target i; defaults to the immediate predecessor.
    int source_for(int target, int n_vehicles) const;

    // Windows reaching past the run duration are allowed; they never fire
    // beyond it.
    void validate(int n_vehicles) const;

    friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

// The three arguments handed to the car-following law.
struct ControllerInputs {
    double speed = 0.0;           // v_eff
    double gap = 0.0;             // s_eff
    double relative_speed = 0.0;  // dv_eff = v_leader - v_follower

    friend bool operator==(const ControllerInputs&, const ControllerInputs&) = default;
};

// Read-only view of the world at the current tick. The history already
// contains the current tick's snapshot.
struct WorldView {
    std::span<const VehicleState> vehicles;
    const StateHistory& history;
    double vehicle_length;
    double t;

    int size() const noexcept { return static_cast<int>(vehicles.size()); }
};

bool is_active(const AttackSpec& spec, int vehicle, double t);

ControllerInputs true_inputs(const WorldView& world, int i);

// Discretized packet dropping: gap and relative speed from time floor(t - m).
ControllerInputs dpda_inputs(const WorldView& world, const AttackSpec& spec, int i);

// Phantom: gap and relative speed of the source vehicle j.
ControllerInputs pa_inputs(const WorldView& world, const AttackSpec& spec, int i);

// Fixed speed: the controller's speed argument is frozen at v_frozen.
ControllerInputs fa_inputs(const WorldView& world, const AttackSpec& spec, int i, double v_frozen);

// Blinding: capped distance over p blinded predecessors, in (0, phi].
double ba_perceived_spacing(const WorldView& world, const AttackSpec& spec, int i);
ControllerInputs ba_inputs(const WorldView& world, const AttackSpec& spec, int i);

// Angular velocity: speed argument scaled by 1 + k*sin(omega*(t - t_start)).
ControllerInputs ava_inputs(const WorldView& world, const AttackSpec& spec, int i);

// Mixed: phantom source j, read at time floor(t - m).
ControllerInputs ma_inputs(const WorldView& world, const AttackSpec& spec, int i);

// Per-run mutable attack state (the FA freeze values).
class AttackScratch {
 public:
    explicit AttackScratch(int n_vehicles);

    // Captures each target's speed at the first tick with t >= t_start.
    void observe(const WorldView& world, const AttackSpec& spec);
    double frozen_speed(int i) const;

 private:
    std::vector<double> frozen_;
    std::vector<bool> captured_;
};

// Inputs for vehicle i: the attack's injector when active, true inputs otherwise.
ControllerInputs controller_inputs(const WorldView& world, const AttackSpec& spec,
                                   const AttackScratch& scratch, int i);

}  // namespace ringsim
