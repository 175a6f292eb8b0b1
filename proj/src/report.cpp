#include "ringsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ringsim/metrics.hpp"

namespace ringsim {

namespace {

constexpr ScenarioId kScenarios[] = {ScenarioId::I, ScenarioId::II, ScenarioId::III, ScenarioId::IV};
constexpr Powertrain kFleets[] = {Powertrain::EV, Powertrain::ICE};

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

std::string cell(const std::optional<double>& v) {
    if (!v) return "    ---";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%7.2f", *v);
    return buf;
}

const RunOutcome* find(const SweepOutput& out, ScenarioId s, Powertrain f, const std::string& label) {
    for (const auto& r : out.runs) {
        if (r.scenario == s && r.fleet == f && attack_label(r.attack) == label) return &r;
    }
    return nullptr;
}

// Metric rows x (EV pre/during/post, ICE pre/during/post) for one scenario.
void metric_table(std::ostringstream& os, const SweepOutput& out, ScenarioId s, const std::string& label) {
    using Getter = std::optional<double> PhaseMetrics::*;
    const std::pair<const char*, Getter> rows[] = {{"V_avg", &PhaseMetrics::v_avg},
                                                   {"VSD  ", &PhaseMetrics::mean_vsd},
                                                   {"SSD  ", &PhaseMetrics::mean_ssd},
                                                   {"THW  ", &PhaseMetrics::thw}};
    os << "  Scenario " << to_string(s) << "\n";
    os << "    metric |  EV pre  during    post | ICE pre  during    post\n";
    for (const auto& [name, getter] : rows) {
        os << "    " << name << "  |";
        for (Powertrain f : kFleets) {
            const RunOutcome* r = find(out, s, f, label);
            for (const PhaseMetrics& m : r ? r->phases : std::array<PhaseMetrics, 3>{}) {
                os << " " << cell(r && r->error.empty() && m.valid ? m.*getter : std::nullopt);
            }
            os << (f == Powertrain::EV ? " |" : "\n");
        }
    }
}

std::string collision_text(const RunOutcome& r) {
    if (!r.error.empty()) return "error";
    if (!r.collision) return "none";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s (%d->%d)", r.collision->time, r.collision->follower, r.collision->leader);
    return buf;
}

}  // namespace

void write_trajectory_csv(const RunResult& result, std::ostream& out) {
    out << kTrajectoryHeader << "\n";
    char buf[160];
    for (const Frame& f : result.trajectory) {
        for (const VehicleState& v : f.vehicles) {
            const int len = std::snprintf(buf, sizeof buf, "%.3f,%d,%.6g,%.6g,%.6g,%.6g\n", f.t, v.id, v.position,
                                          v.speed, v.gap, v.accel);
            out.write(buf, len);
        }
    }
}

void emit_trajectory_csv(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_trajectory_csv(result, out);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void emit_plot_data(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const int n = result.config.n_vehicles;
    char buf[64];
    for (int i = 0; i < n; ++i) {
        auto speed = open_out(dir / ("speed_v" + std::to_string(i) + ".dat"));
        auto gap = open_out(dir / ("gap_v" + std::to_string(i) + ".dat"));
        for (const Frame& f : result.trajectory) {
            int len = std::snprintf(buf, sizeof buf, "%.3f %.6g\n", f.t, f.vehicles[i].speed);
            speed.write(buf, len);
            len = std::snprintf(buf, sizeof buf, "%.3f %.6g\n", f.t, f.vehicles[i].gap);
            gap.write(buf, len);
        }
    }
}

std::string run_summary(const RunResult& result) {
    std::ostringstream os;
    os << "scenario " << to_string(result.config.scenario.id) << ", fleet " << to_string(result.config.fleet)
       << ", attack " << to_string(result.config.attack.kind) << "\n";
    if (result.collision) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "collision at %.3f s: vehicle %d hit vehicle %d\n", result.collision->time,
                      result.collision->follower, result.collision->leader);
        os << buf;
    } else {
        os << "no collision\n";
    }
    os << "phase     V_avg    VSD    SSD    THW\n";
    for (const PhaseMetrics& m : phase_metrics(result)) {
        char name[16];
        std::snprintf(name, sizeof name, "%-7s", std::string(to_string(m.phase)).c_str());
        os << name << cell(m.v_avg) << cell(m.mean_vsd) << cell(m.mean_ssd) << cell(m.thw) << "\n";
    }
    return os.str();
}

std::string emit_report(const SweepOutput& output) {
    std::ostringstream os;
    // Attack variants in first-seen order.
    std::vector<std::string> labels;
    std::map<std::string, AttackKind> kind_of;
    for (const auto& r : output.runs) {
        const std::string label = attack_label(r.attack);
        if (!kind_of.count(label)) {
            labels.push_back(label);
            kind_of[label] = r.attack.kind;
        }
    }

    os << "== Baseline performance (no attack) ==\n";
    os << "Units: V_avg (m/s), VSD (m/s), SSD (m), THW (s). '---' marks missing data.\n";
    for (ScenarioId s : kScenarios) {
        if (find(output, s, Powertrain::EV, "baseline") || find(output, s, Powertrain::ICE, "baseline")) {
            metric_table(os, output, s, "baseline");
        }
    }

    os << "\n== Performance under attack ==\n";
    for (const auto& label : labels) {
        if (label == "baseline") continue;
        os << "Attack " << label << "\n";
        for (ScenarioId s : kScenarios) {
            const RunOutcome* ev = find(output, s, Powertrain::EV, label);
            const RunOutcome* ice = find(output, s, Powertrain::ICE, label);
            if (!ev && !ice) continue;
            metric_table(os, output, s, label);
            os << "    collision: EV " << (ev ? collision_text(*ev) : "n/a") << ", ICE "
               << (ice ? collision_text(*ice) : "n/a") << "\n";
        }
    }

    os << "\n== Collision status ==\n";
    os << "attack              |   I  |  II  | III  |  IV  \n";
    for (const auto& label : labels) {
        char head[32];
        std::snprintf(head, sizeof head, "%-20s", label.c_str());
        os << head;
        for (ScenarioId s : kScenarios) {
            bool any = false;
            bool seen = false;
            for (Powertrain f : kFleets) {
                if (const RunOutcome* r = find(output, s, f, label)) {
                    seen = true;
                    any = any || r->collision.has_value();
                }
            }
            os << "| " << (seen ? (any ? "Yes " : "No  ") : "n/a ") << " ";
        }
        os << "\n";
    }

    os << "\n== Risk classification ==\n";
    std::map<AttackKind, std::map<ScenarioId, bool>> outcomes;
    for (const auto& r : output.runs) {
        if (r.attack.kind == AttackKind::None || !r.error.empty()) continue;
        bool& hit = outcomes[r.attack.kind][r.scenario];
        hit = hit || r.collision.has_value();
    }
    std::map<RiskClass, std::vector<AttackKind>> tiers;
    std::vector<AttackKind> incomplete;
    for (const auto& [kind, per_scenario] : outcomes) {
        try {
            tiers[classify_risk(per_scenario)].push_back(kind);
        } catch (const std::invalid_argument&) {
            incomplete.push_back(kind);
        }
    }
    for (RiskClass tier : {RiskClass::Low, RiskClass::Variable, RiskClass::High}) {
        os << to_string(tier) << "-risk:";
        for (AttackKind k : tiers[tier]) os << " " << to_string(k);
        os << "\n";
    }
    if (!incomplete.empty()) {
        os << "Unclassified (incomplete scenario set):";
        for (AttackKind k : incomplete) os << " " << to_string(k);
        os << "\n";
    }

    bool header = false;
    for (const auto& r : output.runs) {
        if (r.error.empty()) continue;
        if (!header) os << "\n== Failed runs ==\n";
        header = true;
        os << r.key << ": " << r.error << "\n";
    }
    return os.str();
}

}  // namespace ringsim
