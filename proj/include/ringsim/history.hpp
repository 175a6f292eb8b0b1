#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ringsim/vehicle.hpp"

namespace ringsim {

struct Snapshot {
    std::vector<double> gaps;
    std::vector<double> speeds;
};

// Per-tick record of (gap, speed) for every vehicle. Tick n is time n*dt.
class StateHistory {
 public:
    explicit StateHistory(double dt);

    void record(std::span<const VehicleState> states);

    // Snapshot at the tick nearest to t (round half up). Throws
    // QueryOutOfRange for t < 0 or t past the last recorded tick.
    const Snapshot& lookup(double t) const;

    const Snapshot& at_tick(std::size_t tick) const { return records_.at(tick); }
    std::size_t size() const noexcept { return records_.size(); }
    double dt() const noexcept { return dt_; }
    double current_time() const noexcept;

 private:
    double dt_;
    std::vector<Snapshot> records_;
};

}  // namespace ringsim
