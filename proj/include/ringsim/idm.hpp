#pragma once

#include <string_view>

namespace ringsim {

// Controller parameter vector of the Intelligent Driver Model.
struct IdmParams {
    double alpha = 0.0;      // max acceleration, m/s^2
    double beta = 0.0;       // comfortable deceleration, m/s^2
    double kappa = 0.0;      // acceleration exponent
    double eta = 0.0;        // minimum spacing, m
    double tau = 0.0;        // desired time gap, s
    double v_desired = 0.0;  // desired velocity, m/s

    // Throws ConfigError naming the first non-positive parameter.
    void validate(std::string_view where = "params") const;

    friend bool operator==(const IdmParams&, const IdmParams&) = default;
};

enum class ParamSet { EvAcc, IceAcc, Hdv };

// Calibrated presets: EV-ACC, ICE-ACC and human-driven vehicles.
IdmParams preset(ParamSet set);

// Global acceleration limits [lower, upper] applied to every controller output.
struct AccelBounds {
    double lower = -10.0;
    double upper = 5.0;

    friend bool operator==(const AccelBounds&, const AccelBounds&) = default;
};

/// Desired spacing eta + tau*v + v*approach_rate / (2*sqrt(alpha*beta)).
/// `approach_rate` is the closing speed (follower minus leader); the result
/// is not clamped and may be negative.
double desired_spacing(const IdmParams& p, double speed, double approach_rate);

/// IDM acceleration for a follower at `speed` with bumper-to-bumper `gap`.
///
/// `relative_speed` is leader speed minus follower speed, the convention used
/// by ControllerInputs. The interaction term is evaluated with the closing
/// speed (-relative_speed), so a follower approaching a slower leader wants a
/// larger gap. The output is clamped to `bounds`.
///
/// Throws std::invalid_argument when gap <= 0: a non-positive gap means a
/// collision went undetected upstream.
double idm_accel(const IdmParams& p, double speed, double gap, double relative_speed,
                 const AccelBounds& bounds = {});

}  // namespace ringsim
