#include "ringsim/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ringsim/error.hpp"

namespace ringsim {

namespace {

constexpr double kTimeEps = 1e-9;

template <class Select>
double population_sd(std::span<const Frame> frames, MetricWindow window, Select select) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Frame& f : frames) {
        if (!window.contains(f.t)) continue;
        sum += select(f);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("metric window contains no samples");
    const double mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (const Frame& f : frames) {
        if (!window.contains(f.t)) continue;
        const double d = select(f) - mean;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(count));
}

std::size_t fleet_size(std::span<const Frame> frames) {
    if (frames.empty()) throw std::invalid_argument("empty trajectory");
    return frames.front().vehicles.size();
}

MetricWindow window_for(const SimConfig& config, Phase phase) {
    switch (phase) {
        case Phase::Pre: return {config.phases.pre.start, config.phases.pre.end, false};
        case Phase::During: return {config.phases.during.start, config.phases.during.end, false};
        case Phase::Post: return {config.phases.post.start, config.phases.post.end, true};
    }
    return {};
}

}  // namespace

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::Pre: return "pre";
        case Phase::During: return "during";
        case Phase::Post: return "post";
    }
    return "?";
}

bool MetricWindow::contains(double t) const noexcept {
    if (t < start - kTimeEps) return false;
    return closed ? t <= end + kTimeEps : t < end - kTimeEps;
}

std::optional<double> thw(std::span<const Frame> frames, MetricWindow window, double speed_floor) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Frame& f : frames) {
        if (!window.contains(f.t)) continue;
        for (const VehicleState& v : f.vehicles) {
            if (v.speed <= speed_floor) continue;
            sum += v.gap / v.speed;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

double vsd_per_vehicle(std::span<const Frame> frames, int vehicle, MetricWindow window) {
    return population_sd(frames, window, [vehicle](const Frame& f) { return f.vehicles[vehicle].speed; });
}

double ssd_per_vehicle(std::span<const Frame> frames, int vehicle, MetricWindow window) {
    return population_sd(frames, window, [vehicle](const Frame& f) { return f.vehicles[vehicle].gap; });
}

double mean_vsd(std::span<const Frame> frames, MetricWindow window) {
    const std::size_t n = fleet_size(frames);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += vsd_per_vehicle(frames, static_cast<int>(i), window);
    return sum / static_cast<double>(n);
}

double mean_ssd(std::span<const Frame> frames, MetricWindow window) {
    const std::size_t n = fleet_size(frames);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += ssd_per_vehicle(frames, static_cast<int>(i), window);
    return sum / static_cast<double>(n);
}

double v_avg(std::span<const Frame> frames, MetricWindow window) {
    const std::size_t n = fleet_size(frames);
    std::vector<double> sums(n, 0.0);
    std::size_t count = 0;
    for (const Frame& f : frames) {
        if (!window.contains(f.t)) continue;
        for (std::size_t i = 0; i < n; ++i) sums[i] += f.vehicles[i].speed;
        ++count;
    }
    if (count == 0) throw std::invalid_argument("metric window contains no samples");
    double fleet = 0.0;
    for (double s : sums) fleet += s / static_cast<double>(count);
    return fleet / static_cast<double>(n);
}

std::array<PhaseMetrics, 3> phase_metrics(const RunResult& result) {
    std::array<PhaseMetrics, 3> out{};
    const Phase phases[] = {Phase::Pre, Phase::During, Phase::Post};
    for (std::size_t k = 0; k < 3; ++k) {
        PhaseMetrics& m = out[k];
        m.phase = phases[k];
        const MetricWindow w = window_for(result.config, m.phase);
        // Phases the run never finished (short duration) have no metrics.
        if (result.trajectory.empty() || result.trajectory.back().t < w.end - kTimeEps) continue;
        // A collision anywhere before the phase closes truncates it.
        if (result.collision) {
            const double tc = result.collision->time;
            const bool complete = w.closed ? false : tc >= w.end - kTimeEps;
            if (!complete) continue;
        }
        m.valid = true;
        m.v_avg = v_avg(result.trajectory, w);
        m.mean_vsd = mean_vsd(result.trajectory, w);
        m.mean_ssd = mean_ssd(result.trajectory, w);
        m.thw = thw(result.trajectory, w);
    }
    return out;
}

std::string_view to_string(RiskClass risk) {
    switch (risk) {
        case RiskClass::Low: return "Low";
        case RiskClass::Variable: return "Variable";
        case RiskClass::High: return "High";
    }
    return "?";
}

RiskClass classify_risk(const std::map<ScenarioId, bool>& collided) {
    std::size_t hits = 0;
    for (auto id : {ScenarioId::I, ScenarioId::II, ScenarioId::III, ScenarioId::IV}) {
        auto it = collided.find(id);
        if (it == collided.end()) {
            throw std::invalid_argument("classify_risk: missing outcome for scenario " +
                                        std::string(to_string(id)));
        }
        hits += it->second ? 1 : 0;
    }
    if (hits == 4) return RiskClass::High;
    if (hits == 0) return RiskClass::Low;
    return RiskClass::Variable;
}

}  // namespace ringsim
