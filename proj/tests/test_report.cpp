#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ringsim/report.hpp"
#include "ringsim/sweep.hpp"

using namespace ringsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("ringsim_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

SimConfig two_vehicle_toy() {
    SimConfig c;
    c.scenario = ScenarioDef::builtin(ScenarioId::Custom);
    c.n_vehicles = 2;
    c.ring_length = 60.0;
    c.duration = c.dt;
    return c;
}

SweepSpec small_grid() {
    SweepSpec s = reproduction_grid();
    s.scenarios = {ScenarioId::I, ScenarioId::IV};
    s.base.duration = 100.0;
    s.base.phases.post = {90.0, 100.0};
    return s;
}

}  // namespace

TEST(TrajectoryCsv, GoldenTwoVehicleRun) {
    std::ostringstream os;
    write_trajectory_csv(run(two_vehicle_toy()), os);
    EXPECT_EQ(os.str(), slurp(fs::path(RINGSIM_GOLDEN_DIR) / "two_vehicle.csv"));
}

TEST(TrajectoryCsv, HeaderAndOrdering) {
    SimConfig c;
    c.duration = 1.0;
    std::ostringstream os;
    write_trajectory_csv(run(c), os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kTrajectoryHeader);
    int rows = 0;
    int last_id = -1;
    while (std::getline(in, line)) {
        const int id = std::stoi(line.substr(line.find(',') + 1));
        EXPECT_EQ(id, (last_id + 1) % 10);
        last_id = id;
        ++rows;
    }
    EXPECT_EQ(rows, 31 * 10);
}

TEST(TrajectoryCsv, CollidedRunEndsAtCollisionTime) {
    SimConfig c;
    c.attack.kind = AttackKind::BA;
    c.attack.targets = {1};
    c.attack.blinded_p = 2;
    c.attack.ba_gaps_only = true;
    const RunResult r = run(c);
    ASSERT_TRUE(r.collision.has_value());
    std::ostringstream os;
    write_trajectory_csv(r, os);
    const std::string text = os.str();
    const auto last_start = text.rfind('\n', text.size() - 2) + 1;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f,", r.collision->time);
    EXPECT_EQ(text.compare(last_start, std::string(buf).size(), buf), 0) << text.substr(last_start);
}

TEST(TrajectoryCsv, UnwritablePathThrows) {
    TempDir dir("unwritable");
    std::ofstream(dir.path / "file") << "x";
    EXPECT_THROW(emit_trajectory_csv(run(two_vehicle_toy()), dir.path / "file" / "y.csv"), std::runtime_error);
}

TEST(PlotData, OneSeriesPerVehicle) {
    TempDir dir("plot");
    emit_plot_data(run(two_vehicle_toy()), dir.path);
    EXPECT_EQ(slurp(dir.path / "speed_v0.dat"), "0.000 0\n0.033 0.0346798\n");
    EXPECT_EQ(slurp(dir.path / "gap_v1.dat"), "0.000 25\n0.033 25\n");
}

TEST(AttackLabel, Names) {
    AttackSpec a;
    EXPECT_EQ(attack_label(a), "baseline");
    a.kind = AttackKind::DPDA;
    a.delay_m = 6;
    EXPECT_EQ(attack_label(a), "DPDA-m6");
    a.kind = AttackKind::BA;
    a.blinded_p = 2;
    a.ba_gaps_only = true;
    EXPECT_EQ(attack_label(a), "BA-p2-phi50-gaps");
    a.kind = AttackKind::AVA;
    EXPECT_EQ(attack_label(a), "AVA-k0.002");
}

TEST(Sweep, OrderAndKeys) {
    const auto out = run_sweep(small_grid());
    const auto grid = small_grid();
    ASSERT_EQ(out.runs.size(), grid.attacks.size() * 2 * 2);
    EXPECT_EQ(out.runs[0].key, "I_EV_baseline");
    EXPECT_EQ(out.runs[1].key, "I_ICE_baseline");
    EXPECT_EQ(out.runs[2].key, "IV_EV_baseline");
    EXPECT_EQ(out.runs[4].key, "I_EV_DPDA-m6");
    EXPECT_EQ(out.runs[4].attack.targets, (std::vector<int>{1}));
    for (const auto& r : out.runs) EXPECT_TRUE(r.error.empty()) << r.key << ": " << r.error;
}

TEST(Sweep, ParallelismDoesNotChangeOutput) {
    TempDir a("par1"), b("par8");
    SweepOptions one;
    one.parallelism = 1;
    one.trajectory_dir = a.path;
    SweepOptions eight;
    eight.parallelism = 8;
    eight.trajectory_dir = b.path;
    const auto ra = run_sweep(small_grid(), one);
    const auto rb = run_sweep(small_grid(), eight);
    EXPECT_EQ(emit_report(ra), emit_report(rb));
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a.path)) {
        const auto other = b.path / entry.path().filename();
        ASSERT_TRUE(fs::exists(other)) << other;
        ASSERT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
        ++files;
    }
    EXPECT_EQ(files, static_cast<int>(ra.runs.size()));
}

TEST(Sweep, FailedRunIsReportedNotFatal) {
    SweepSpec s;
    s.scenarios = {ScenarioId::I};
    s.fleets = {Powertrain::EV};
    AttackSpec early;
    early.kind = AttackKind::DPDA;
    early.delay_m = 6;
    early.window = {2.0, 10.0};  // reaches back before t = 0
    s.attacks = {AttackSpec{}, early};
    s.base.duration = 40.0;
    s.base.phases = {{5.0, 10.0}, {10.0, 20.0}, {20.0, 40.0}};
    const auto out = run_sweep(s);
    ASSERT_EQ(out.runs.size(), 2u);
    EXPECT_TRUE(out.runs[0].error.empty());
    EXPECT_FALSE(out.runs[1].error.empty());
    const std::string report = emit_report(out);
    EXPECT_NE(report.find("I_EV_DPDA-m6"), std::string::npos);
}

TEST(Report, ContainsAllSections) {
    const std::string report = emit_report(run_sweep(small_grid()));
    for (const char* needle : {"Baseline", "Collision status", "Risk classification", "BA", "Variable"}) {
        EXPECT_NE(report.find(needle), std::string::npos) << needle;
    }
}

TEST(RunSummary, MentionsCollision) {
    SimConfig c;
    c.attack.kind = AttackKind::BA;
    c.attack.targets = {1};
    c.attack.blinded_p = 2;
    c.attack.ba_gaps_only = true;
    const std::string s = run_summary(run(c));
    EXPECT_NE(s.find("collision"), std::string::npos) << s;
    const std::string clean = run_summary(run(SimConfig{}));
    EXPECT_NE(clean.find("no collision"), std::string::npos) << clean;
}
