#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ringsim/scenario.hpp"

namespace ringsim {

// Grid of runs: the cartesian product scenarios x fleets x attacks, each
// applied on top of `base`. Attack templates with no targets use the
// scenario's attacked vehicles.
struct SweepSpec {
    std::vector<ScenarioId> scenarios;
    std::vector<Powertrain> fleets;
    std::vector<AttackSpec> attacks;
    std::string output_dir;
    SimConfig base;

    void validate() const;
};

using ConfigDocument = std::variant<SimConfig, SweepSpec>;

// Parses a YAML config document. A document with a top-level `sweep` key
// yields a SweepSpec, anything else a SimConfig. Unknown keys are rejected.
// Throws ConfigError carrying the line and field of the problem.
ConfigDocument parse_config(std::string_view text);
SimConfig parse_sim_config(std::string_view text);
SweepSpec parse_sweep_spec(std::string_view text);

// Complete, re-parseable echo of a config (all defaults spelled out).
std::string to_yaml(const SimConfig& config);

// Fills in attack targets from the scenario when the template left them empty.
SimConfig resolve(SimConfig config);

}  // namespace ringsim
