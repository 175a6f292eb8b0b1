#include "ringsim/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringsim {

std::vector<VehicleState> euler_step(std::span<const VehicleState> states,
                                     std::span<const double> accels, double dt,
                                     double ring_length) {
    if (states.size() != accels.size()) {
        throw std::invalid_argument("euler_step: one acceleration per vehicle required");
    }
    const std::size_t n = states.size();
    std::vector<VehicleState> next(states.begin(), states.end());
    for (std::size_t k = 0; k < n; ++k) {
        const VehicleState& cur = states[k];
        VehicleState& out = next[k];
        out.gap = cur.gap + (states[predecessor(k, n)].speed - cur.speed) * dt;
        out.speed = std::max(0.0, cur.speed + accels[k] * dt);
        out.accel = accels[k];
        double pos = std::fmod(cur.position + cur.speed * dt, ring_length);
        if (pos < 0.0) pos += ring_length;
        out.position = pos;
    }
    return next;
}

}  // namespace ringsim
