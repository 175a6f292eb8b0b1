#pragma once

#include <cstddef>

namespace ringsim {

enum class VehicleKind { Hdv, Acc };
enum class Powertrain { EV, ICE };

struct VehicleState {
    int id = 0;
    double position = 0.0;  // arc length along the ring, [0, L)
    double speed = 0.0;     // m/s, never negative
    double gap = 0.0;       // bumper-to-bumper distance to the predecessor, m
    double accel = 0.0;     // last applied acceleration, m/s^2
    VehicleKind kind = VehicleKind::Hdv;
    Powertrain powertrain = Powertrain::EV;  // meaningful only for Acc

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

// Vehicle i follows vehicle (i - 1) mod n; vehicle 0 follows n - 1.
constexpr std::size_t predecessor(std::size_t i, std::size_t n) noexcept {
    return (i + n - 1) % n;
}

}  // namespace ringsim
