#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ringsim/metrics.hpp"
#include "ringsim/scenario.hpp"

using namespace ringsim;

namespace {

// Frames at t = 0, 1, 2, ... with the given per-vehicle series.
std::vector<Frame> frames_from(const std::vector<std::vector<double>>& speeds,
                               const std::vector<std::vector<double>>& gaps) {
    const std::size_t ticks = speeds.front().size();
    std::vector<Frame> out(ticks);
    for (std::size_t k = 0; k < ticks; ++k) {
        out[k].t = static_cast<double>(k);
        for (std::size_t i = 0; i < speeds.size(); ++i) {
            VehicleState v;
            v.id = static_cast<int>(i);
            v.speed = speeds[i][k];
            v.gap = gaps[i][k];
            out[k].vehicles.push_back(v);
        }
    }
    return out;
}

const MetricWindow kAll{0.0, 1e9, true};

}  // namespace

TEST(MetricWindow, HalfOpenAndClosed) {
    MetricWindow open{30.0, 60.0, false};
    EXPECT_TRUE(open.contains(30.0));
    EXPECT_TRUE(open.contains(59.99));
    EXPECT_FALSE(open.contains(60.0));
    EXPECT_FALSE(open.contains(29.99));
    MetricWindow closed{90.0, 120.0, true};
    EXPECT_TRUE(closed.contains(120.0));
    EXPECT_FALSE(closed.contains(120.01));
    // tick times such as 1800 * (1/30) land within rounding of the edge
    EXPECT_TRUE(open.contains(900 * (1.0 / 30.0)));
    EXPECT_FALSE(open.contains(1800 * (1.0 / 30.0)));
}

TEST(Sd, ConstantSeriesIsZero) {
    auto f = frames_from({{7, 7, 7, 7}}, {{20, 20, 20, 20}});
    EXPECT_DOUBLE_EQ(vsd_per_vehicle(f, 0, kAll), 0.0);
    EXPECT_DOUBLE_EQ(ssd_per_vehicle(f, 0, kAll), 0.0);
}

TEST(Sd, TwoPointSeries) {
    auto f = frames_from({{1, 3}}, {{1, 3}});
    EXPECT_DOUBLE_EQ(vsd_per_vehicle(f, 0, kAll), 1.0);
    EXPECT_DOUBLE_EQ(ssd_per_vehicle(f, 0, kAll), 1.0);
}

TEST(Sd, FleetMeanHandValues) {
    auto f = frames_from({{10, 12, 14, 12}, {5, 5, 7, 7}}, {{10, 12, 14, 12}, {5, 5, 7, 7}});
    EXPECT_NEAR(vsd_per_vehicle(f, 0, kAll), 1.4142135623730951, 1e-15);
    EXPECT_DOUBLE_EQ(vsd_per_vehicle(f, 1, kAll), 1.0);
    EXPECT_NEAR(mean_vsd(f, kAll), 1.2071067811865475, 1e-15);
    EXPECT_NEAR(mean_ssd(f, kAll), 1.2071067811865475, 1e-15);
    EXPECT_DOUBLE_EQ(v_avg(f, kAll), 9.0);
}

TEST(Sd, WindowSelectsSamples) {
    auto f = frames_from({{100, 1, 3, 100}}, {{0, 0, 0, 0}});
    EXPECT_DOUBLE_EQ(vsd_per_vehicle(f, 0, MetricWindow{1.0, 3.0, false}), 1.0);
    EXPECT_DOUBLE_EQ(v_avg(f, MetricWindow{1.0, 2.0, true}), 2.0);
}

TEST(Thw, ConstantRun) {
    auto f = frames_from({{15, 15, 15}}, {{24, 24, 24}});
    ASSERT_TRUE(thw(f, kAll).has_value());
    EXPECT_DOUBLE_EQ(*thw(f, kAll), 1.6);
}

TEST(Thw, StoppedSamplesExcluded) {
    auto f = frames_from({{0.0, 10.0}, {0.05, 20.0}}, {{3, 20}, {3, 40}});
    EXPECT_DOUBLE_EQ(*thw(f, kAll), 2.0);
    auto stopped = frames_from({{0.0, 0.0}}, {{3, 3}});
    EXPECT_FALSE(thw(stopped, kAll).has_value());
}

TEST(Metrics, EmptyWindowIsError) {
    auto f = frames_from({{1, 2}}, {{1, 2}});
    const MetricWindow none{50.0, 60.0, false};
    EXPECT_THROW(v_avg(f, none), std::invalid_argument);
    EXPECT_THROW(mean_vsd(f, none), std::invalid_argument);
    EXPECT_THROW(vsd_per_vehicle(f, 0, none), std::invalid_argument);
    std::vector<Frame> empty;
    EXPECT_THROW(mean_ssd(empty, kAll), std::invalid_argument);
}

TEST(Metrics, ShiftAndScaleProperties) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.5, 30.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> sp(3, std::vector<double>(25)), gp(3, std::vector<double>(25));
        for (auto& row : sp) for (auto& x : row) x = u(rng);
        for (auto& row : gp) for (auto& x : row) x = u(rng);
        auto shifted = sp;
        auto scaled = sp;
        auto gscaled = gp;
        for (auto& row : shifted) for (auto& x : row) x += 4.0;
        for (auto& row : scaled) for (auto& x : row) x *= 2.0;
        for (auto& row : gscaled) for (auto& x : row) x *= 2.0;
        const auto base = frames_from(sp, gp);
        // SD is shift invariant and scales linearly
        ASSERT_NEAR(mean_vsd(frames_from(shifted, gp), kAll), mean_vsd(base, kAll), 1e-9);
        ASSERT_NEAR(mean_vsd(frames_from(scaled, gp), kAll), 2.0 * mean_vsd(base, kAll), 1e-9);
        ASSERT_NEAR(v_avg(frames_from(shifted, gp), kAll), v_avg(base, kAll) + 4.0, 1e-9);
        // THW is invariant under scaling speed and gap together
        ASSERT_NEAR(*thw(frames_from(scaled, gscaled), kAll), *thw(base, kAll), 1e-9);
        ASSERT_GE(mean_ssd(base, kAll), 0.0);
    }
}

TEST(Metrics, LocalToWindow) {
    // changing samples outside the window leaves the phase value untouched
    auto a = frames_from({{1, 2, 3, 4, 5, 6}}, {{1, 2, 3, 4, 5, 6}});
    auto b = frames_from({{90, 2, 3, 4, 5, 60}}, {{9, 2, 3, 4, 5, 9}});
    const MetricWindow w{1.0, 5.0, false};
    EXPECT_DOUBLE_EQ(mean_vsd(a, w), mean_vsd(b, w));
    EXPECT_DOUBLE_EQ(mean_ssd(a, w), mean_ssd(b, w));
    EXPECT_DOUBLE_EQ(*thw(a, w), *thw(b, w));
}

TEST(PhaseMetrics, BaselineAllPhasesValid) {
    SimConfig c;
    auto r = run(c);
    auto pm = phase_metrics(r);
    for (const auto& m : pm) {
        EXPECT_TRUE(m.valid);
        ASSERT_TRUE(m.v_avg && m.mean_vsd && m.mean_ssd && m.thw);
        EXPECT_GE(*m.v_avg, 0.0);
        EXPECT_GE(*m.mean_vsd, 0.0);
    }
    EXPECT_EQ(pm[0].phase, Phase::Pre);
    EXPECT_EQ(pm[2].phase, Phase::Post);
}

TEST(PhaseMetrics, CollisionInvalidatesLaterPhases) {
    RunResult r;
    r.config = SimConfig{};
    for (int k = 0; k <= 2100; ++k) {  // through t = 70
        Frame f;
        f.t = k / 30.0;
        for (int i = 0; i < 10; ++i) f.vehicles.push_back(VehicleState{i, 0.0, 10.0, 25.0, 0.0});
        r.trajectory.push_back(f);
    }
    r.collision = Collision{70.0, 3, 2};
    auto pm = phase_metrics(r);
    EXPECT_TRUE(pm[0].valid);
    EXPECT_FALSE(pm[1].valid);
    EXPECT_FALSE(pm[2].valid);
    EXPECT_FALSE(pm[1].v_avg.has_value());
    EXPECT_FALSE(pm[2].thw.has_value());
}

TEST(PhaseMetrics, ShortRunLeavesUnreachedPhasesEmpty) {
    SimConfig c;
    c.duration = 45.0;
    auto pm = phase_metrics(run(c));
    EXPECT_FALSE(pm[0].valid);
    EXPECT_FALSE(pm[2].valid);
}

TEST(ClassifyRisk, Tiers) {
    using S = ScenarioId;
    EXPECT_EQ(classify_risk({{S::I, false}, {S::II, false}, {S::III, false}, {S::IV, false}}), RiskClass::Low);
    EXPECT_EQ(classify_risk({{S::I, false}, {S::II, false}, {S::III, false}, {S::IV, true}}),
              RiskClass::Variable);
    EXPECT_EQ(classify_risk({{S::I, true}, {S::II, true}, {S::III, true}, {S::IV, true}}), RiskClass::High);
    EXPECT_THROW(classify_risk({{S::I, true}, {S::II, true}}), std::invalid_argument);
    EXPECT_EQ(to_string(RiskClass::Variable), "Variable");
}
