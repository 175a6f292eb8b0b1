#pragma once

#include <span>
#include <vector>

#include "ringsim/vehicle.hpp"

namespace ringsim {

// One explicit Euler step of the ring, applied to all vehicles at once:
//   gap_k   += (v_pred(k) - v_k) * dt
//   v_k     += a_k * dt, clamped at 0
//   x_k     += v_k * dt (pre-step speed), wrapped to [0, L)
// Gaps may go negative; collision detection is a separate pass.
std::vector<VehicleState> euler_step(std::span<const VehicleState> states,
                                     std::span<const double> accels, double dt,
                                     double ring_length);

}  // namespace ringsim
