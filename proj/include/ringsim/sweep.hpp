#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ringsim/config.hpp"
#include "ringsim/metrics.hpp"

namespace ringsim {

// Short stable label for an attack variant, e.g. "DPDA-m6", "BA-p2-phi50".
std::string attack_label(const AttackSpec& spec);

struct RunOutcome {
    ScenarioId scenario = ScenarioId::I;
    Powertrain fleet = Powertrain::EV;
    AttackSpec attack;
    std::string key;  // "<scenario>_<fleet>_<attack label>"
    std::optional<Collision> collision;
    std::array<PhaseMetrics, 3> phases{};
    std::string error;  // non-empty when the run failed
};

struct SweepOutput {
    std::vector<RunOutcome> runs;  // in cartesian order, independent of scheduling
};

struct SweepOptions {
    int parallelism = 1;
    // When set, each run's trajectory CSV is written here as <key>.csv.
    std::optional<std::filesystem::path> trajectory_dir;
    // When set, per-vehicle plot series are written under <dir>/<key>/.
    std::optional<std::filesystem::path> plot_dir;
};

SweepOutput run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

// Built-in grid: four scenarios x both fleets x (baseline, DPDA m in {6,8,9},
// PA, FA, BA p=2 phi=50 gaps-only, AVA k=0.002, MA m in {6,8,9}).
SweepSpec reproduction_grid();

}  // namespace ringsim
