#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ringsim/scenario.hpp"
#include "ringsim/sweep.hpp"

namespace ringsim {

inline constexpr const char* kTrajectoryHeader = "t,vehicle_id,position_m,speed_mps,gap_m,accel_mps2";

// One row per vehicle per tick, ordered by (t, vehicle_id).
void write_trajectory_csv(const RunResult& result, std::ostream& out);
void emit_trajectory_csv(const RunResult& result, const std::filesystem::path& path);

// Two-column (t, value) series per vehicle: speed_v<id>.dat, gap_v<id>.dat.
void emit_plot_data(const RunResult& result, const std::filesystem::path& dir);

// Per-phase metrics and collision line for a single run.
std::string run_summary(const RunResult& result);

// Baseline table, attack comparison table, collision matrix and risk tiers.
std::string emit_report(const SweepOutput& output);

}  // namespace ringsim
