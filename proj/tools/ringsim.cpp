// ringsim: ring-road car-following simulator with V2V attack injection.
//
//   ringsim run [config.yaml] [--scenario IV --fleet EV --attack DPDA --delay 6]
//   ringsim sweep sweep.yaml --parallel 8
//   ringsim reproduce --out results --parallel 8

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ringsim/config.hpp"
#include "ringsim/error.hpp"
#include "ringsim/report.hpp"
#include "ringsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace ringsim;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct Overrides {
    std::string scenario;
    std::string fleet;
    std::string attack;
    double delay = -1.0;
    bool ba_gaps_only = false;
};

void apply(const Overrides& o, SimConfig& c) {
    if (!o.scenario.empty()) c.scenario = ScenarioDef::builtin(parse_scenario_id(o.scenario));
    if (!o.fleet.empty()) c.fleet = parse_powertrain(o.fleet);
    if (!o.attack.empty()) {
        c.attack.kind = parse_attack_kind(o.attack);
        c.attack.targets.clear();
    }
    if (o.delay >= 0.0) c.attack.delay_m = o.delay;
    if (o.ba_gaps_only) c.attack.ba_gaps_only = true;
}

int finish_sweep(const SweepSpec& spec, const fs::path& out, int parallel, bool plot) {
    SweepOptions options;
    options.parallelism = parallel;
    options.trajectory_dir = out / "trajectories";
    if (plot) options.plot_dir = out / "plot";
    const SweepOutput result = run_sweep(spec, options);
    const std::string report = emit_report(result);
    write_file(out / "report.txt", report);
    std::cout << report;
    std::cout << "\n" << result.runs.size() << " runs; outputs in " << out.string() << "\n";
    for (const auto& r : result.runs) {
        if (!r.error.empty()) return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ring-road ACC simulator with communication attack injection"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path;
    std::string out_dir;
    int parallel = 1;
    bool plot = false;

    auto* run_cmd = app.add_subcommand("run", "Run a single configuration");
    run_cmd->add_option("config", config_path, "YAML config document")->check(CLI::ExistingFile);
    run_cmd->add_option("--scenario", overrides.scenario, "I, II, III or IV");
    run_cmd->add_option("--fleet", overrides.fleet, "EV or ICE");
    run_cmd->add_option("--attack", overrides.attack, "None, DPDA, PA, FA, BA, AVA or MA");
    run_cmd->add_option("--delay", overrides.delay, "delay m in seconds (DPDA, MA)");
    run_cmd->add_flag("--ba-gaps-only", overrides.ba_gaps_only, "BA perceived spacing sums gaps only");
    run_cmd->add_option("--out", out_dir, "output directory")->default_str("ringsim_out");
    run_cmd->add_flag("--plot-data", plot, "write per-vehicle (t, value) series");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid described by a sweep document");
    sweep_cmd->add_option("config", config_path, "YAML sweep document")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out_dir, "output directory (default: the document's output_dir)");
    sweep_cmd->add_option("--parallel", parallel, "concurrent runs")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--ba-gaps-only", overrides.ba_gaps_only, "BA perceived spacing sums gaps only");
    sweep_cmd->add_flag("--plot-data", plot, "write per-vehicle (t, value) series");

    auto* repro_cmd = app.add_subcommand("reproduce", "Run the built-in experiment grid");
    repro_cmd->add_option("--out", out_dir, "output directory")->default_str("reproduce_out");
    repro_cmd->add_option("--parallel", parallel, "concurrent runs")->check(CLI::PositiveNumber);
    repro_cmd->add_flag("--plot-data", plot, "write per-vehicle (t, value) series");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            SimConfig config = config_path.empty() ? SimConfig{} : parse_sim_config(read_file(config_path));
            apply(overrides, config);
            config = resolve(std::move(config));
            config.validate();
            const fs::path out = out_dir.empty() ? fs::path("ringsim_out") : fs::path(out_dir);
            const RunResult result = run(config);
            emit_trajectory_csv(result, out / "trajectory.csv");
            write_file(out / "config.yaml", to_yaml(result.config));
            const std::string summary = run_summary(result);
            write_file(out / "summary.txt", summary);
            if (plot) emit_plot_data(result, out / "plot");
            std::cout << summary;
            return 0;
        }
        if (*sweep_cmd) {
            SweepSpec spec = parse_sweep_spec(read_file(config_path));
            if (overrides.ba_gaps_only) {
                for (auto& a : spec.attacks) a.ba_gaps_only = true;
            }
            const fs::path out = !out_dir.empty()          ? fs::path(out_dir)
                                 : !spec.output_dir.empty() ? fs::path(spec.output_dir)
                                                            : fs::path("sweep_out");
            return finish_sweep(spec, out, parallel, plot);
        }
        if (*repro_cmd) {
            const fs::path out = out_dir.empty() ? fs::path("reproduce_out") : fs::path(out_dir);
            return finish_sweep(reproduction_grid(), out, parallel, plot);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
