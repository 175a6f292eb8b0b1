#include "ringsim/history.hpp"

#include <cmath>
#include <string>

#include "ringsim/error.hpp"

namespace ringsim {

StateHistory::StateHistory(double dt) : dt_(dt) {}

void StateHistory::record(std::span<const VehicleState> states) {
    Snapshot snap;
    snap.gaps.reserve(states.size());
    snap.speeds.reserve(states.size());
    for (const auto& s : states) {
        snap.gaps.push_back(s.gap);
        snap.speeds.push_back(s.speed);
    }
    records_.push_back(std::move(snap));
}

double StateHistory::current_time() const noexcept {
    return records_.empty() ? 0.0 : static_cast<double>(records_.size() - 1) * dt_;
}

const Snapshot& StateHistory::lookup(double t) const {
    if (records_.empty()) throw QueryOutOfRange("history is empty");
    if (!(t >= 0.0)) throw QueryOutOfRange("history query before t=0: " + std::to_string(t));
    const double tick = std::floor(t / dt_ + 0.5);
    if (tick > static_cast<double>(records_.size() - 1)) {
        throw QueryOutOfRange("history query past current time: " + std::to_string(t));
    }
    return records_[static_cast<std::size_t>(tick)];
}

}  // namespace ringsim
