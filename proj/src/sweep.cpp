#include "ringsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

#include "ringsim/report.hpp"

namespace ringsim {

namespace {

std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Job {
    ScenarioId scenario;
    Powertrain fleet;
    AttackSpec attack;
};

RunOutcome execute(const SweepSpec& spec, const Job& job, const SweepOptions& options) {
    RunOutcome out;
    out.scenario = job.scenario;
    out.fleet = job.fleet;
    out.attack = job.attack;
    out.key = std::string(to_string(job.scenario)) + "_" + std::string(to_string(job.fleet)) + "_" +
              attack_label(job.attack);
    try {
        SimConfig config = spec.base;
        config.scenario = ScenarioDef::builtin(job.scenario);
        config.fleet = job.fleet;
        config.attack = job.attack;
        config = resolve(std::move(config));
        out.attack = config.attack;
        const RunResult result = run(config);
        out.collision = result.collision;
        out.phases = phase_metrics(result);
        if (options.trajectory_dir) emit_trajectory_csv(result, *options.trajectory_dir / (out.key + ".csv"));
        if (options.plot_dir) emit_plot_data(result, *options.plot_dir / out.key);
    } catch (const std::exception& e) {
        out.error = e.what();
        if (out.error.empty()) out.error = "unknown failure";
    }
    return out;
}

}  // namespace

std::string attack_label(const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::None: return "baseline";
        case AttackKind::DPDA: return "DPDA-m" + fmt_param(spec.delay_m);
        case AttackKind::PA: return "PA";
        case AttackKind::FA: return "FA";
        case AttackKind::BA:
            return "BA-p" + std::to_string(spec.blinded_p) + "-phi" + fmt_param(spec.spacing_cap_phi) +
                   (spec.ba_gaps_only ? "-gaps" : "");
        case AttackKind::AVA: return "AVA-k" + fmt_param(spec.gain_k);
        case AttackKind::MA: return "MA-m" + fmt_param(spec.delay_m);
    }
    return "unknown";
}

SweepOutput run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    std::vector<Job> jobs;
    for (const AttackSpec& attack : spec.attacks) {
        for (ScenarioId scenario : spec.scenarios) {
            for (Powertrain fleet : spec.fleets) jobs.push_back({scenario, fleet, attack});
        }
    }
    if (options.trajectory_dir) std::filesystem::create_directories(*options.trajectory_dir);
    if (options.plot_dir) std::filesystem::create_directories(*options.plot_dir);

    SweepOutput output;
    output.runs.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            output.runs[i] = execute(spec, jobs[i], options);
        }
    };
    const int threads = std::max(1, std::min<int>(options.parallelism, static_cast<int>(jobs.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return output;
}

SweepSpec reproduction_grid() {
    SweepSpec spec;
    spec.scenarios = {ScenarioId::I, ScenarioId::II, ScenarioId::III, ScenarioId::IV};
    spec.fleets = {Powertrain::EV, Powertrain::ICE};
    spec.attacks.push_back(AttackSpec{});
    for (double m : {6.0, 8.0, 9.0}) {
        AttackSpec a;
        a.kind = AttackKind::DPDA;
        a.delay_m = m;
        spec.attacks.push_back(a);
    }
    AttackSpec pa;
    pa.kind = AttackKind::PA;
    spec.attacks.push_back(pa);
    AttackSpec fa;
    fa.kind = AttackKind::FA;
    spec.attacks.push_back(fa);
    AttackSpec ba;
    ba.kind = AttackKind::BA;
    ba.blinded_p = 2;
    ba.spacing_cap_phi = 50.0;
    ba.ba_gaps_only = true;
    spec.attacks.push_back(ba);
    AttackSpec ava;
    ava.kind = AttackKind::AVA;
    ava.gain_k = 0.002;
    spec.attacks.push_back(ava);
    for (double m : {6.0, 8.0, 9.0}) {
        AttackSpec a;
        a.kind = AttackKind::MA;
        a.delay_m = m;
        spec.attacks.push_back(a);
    }
    return spec;
}

}  // namespace ringsim
