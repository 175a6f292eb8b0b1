#include "ringsim/idm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ringsim/error.hpp"

namespace ringsim {

void IdmParams::validate(std::string_view where) const {
    const std::string prefix(where);
    auto require_positive = [&](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigError(prefix + "." + name, std::string(name) + " > 0");
        }
    };
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(kappa, "kappa");
    require_positive(eta, "eta");
    require_positive(tau, "tau");
    require_positive(v_desired, "v_d");
}

IdmParams preset(ParamSet set) {
    switch (set) {
        case ParamSet::EvAcc:
            return {2.01, 8.97, 4.02, 2.02, 1.63, 33.34};
        case ParamSet::IceAcc:
            return {0.60, 5.20, 15.50, 6.30, 2.20, 44.11};
        case ParamSet::Hdv:
            return {1.06, 2.00, 4.00, 3.40, 1.26, 30.00};
    }
    throw std::invalid_argument("unknown parameter set");
}

double desired_spacing(const IdmParams& p, double speed, double approach_rate) {
    return p.eta + p.tau * speed + speed * approach_rate / (2.0 * std::sqrt(p.alpha * p.beta));
}

double idm_accel(const IdmParams& p, double speed, double gap, double relative_speed,
                 const AccelBounds& bounds) {
    if (!(gap > 0.0)) {
        throw std::invalid_argument("idm_accel: non-positive gap " + std::to_string(gap));
    }
    const double ratio = desired_spacing(p, speed, -relative_speed) / gap;
    const double raw = p.alpha * (1.0 - std::pow(speed / p.v_desired, p.kappa) - ratio * ratio);
    return std::clamp(raw, bounds.lower, bounds.upper);
}

}  // namespace ringsim
