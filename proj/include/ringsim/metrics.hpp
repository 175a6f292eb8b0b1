#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "ringsim/scenario.hpp"

namespace ringsim {

enum class Phase { Pre, During, Post };
std::string_view to_string(Phase phase);

// Sample selection over trajectory frames: start <= t < end, or t <= end
// when `closed` is set (the final phase).
struct MetricWindow {
    double start = 0.0;
    double end = 0.0;
    bool closed = false;

    bool contains(double t) const noexcept;
};

// Speeds at or below this are left out of headway averages.
inline constexpr double kHeadwaySpeedFloor = 0.1;

// Mean of gap/speed over all vehicles and ticks in the window; empty when
// every sample is excluded by the speed floor.
std::optional<double> thw(std::span<const Frame> frames, MetricWindow window,
                          double speed_floor = kHeadwaySpeedFloor);

// Population standard deviations (1/T) of one vehicle's series.
double vsd_per_vehicle(std::span<const Frame> frames, int vehicle, MetricWindow window);
double ssd_per_vehicle(std::span<const Frame> frames, int vehicle, MetricWindow window);

// Fleet means of the per-vehicle statistics, over every vehicle.
double mean_vsd(std::span<const Frame> frames, MetricWindow window);
double mean_ssd(std::span<const Frame> frames, MetricWindow window);
double v_avg(std::span<const Frame> frames, MetricWindow window);

struct PhaseMetrics {
    Phase phase = Phase::Pre;
    bool valid = false;  // false when a collision truncates the phase
    std::optional<double> v_avg;
    std::optional<double> mean_vsd;
    std::optional<double> mean_ssd;
    std::optional<double> thw;
};

std::array<PhaseMetrics, 3> phase_metrics(const RunResult& result);

enum class RiskClass { Low, Variable, High };
std::string_view to_string(RiskClass risk);

// High if every scenario collided, Low if none did, Variable otherwise.
// Requires an outcome for each of the four built-in scenarios.
RiskClass classify_risk(const std::map<ScenarioId, bool>& collided);

}  // namespace ringsim
