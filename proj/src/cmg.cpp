#include "gyrohap/cmg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gyrohap {

void FlywheelSpec::validate() const {
    if (!(inertia_fw > 0.0) || !std::isfinite(inertia_fw)) {
        throw std::invalid_argument("cmg: flywheel inertia must be > 0");
    }
    if (!(spin_rate > 0.0) || !std::isfinite(spin_rate)) {
        throw std::invalid_argument("cmg: spin rate must be > 0");
    }
}

void CmgState::validate() const {
    if (!(rate_limit > 0.0) || !std::isfinite(rate_limit)) {
        throw std::invalid_argument("cmg: rate_limit must be > 0");
    }
    if (!(angle_min < angle_max)) {
        throw std::invalid_argument("cmg: empty gimbal angle range");
    }
    if (!(phi >= angle_min && phi <= angle_max)) {
        throw std::invalid_argument("cmg: gimbal angle outside its range");
    }
    if (!(std::abs(phi_rate) <= rate_limit)) {
        throw std::invalid_argument("cmg: gimbal rate exceeds rate_limit");
    }
}

double forward_torque(const CmgState& state, const FlywheelSpec& spec) {
    return -2.0 * spec.momentum() * std::sin(state.phi) * state.phi_rate;
}

GimbalRateCommand inverse_gimbal_rate(double tau_desired, double phi, const FlywheelSpec& spec,
                                      double rate_limit) {
    spec.validate();
    GimbalRateCommand cmd;

    const double sin_phi = std::sin(phi);
    if (std::abs(sin_phi) < kSingularitySinEps) {
        if (tau_desired == 0.0) {
            return cmd;  // nothing demanded, stay put
        }
        // No authority here; escape toward larger |sin φ| at full rate.
        // d|sin φ|/dφ has the sign of sin(φ)·cos(φ); at the exact null any
        // direction works.
        const double grad = sin_phi * std::cos(phi);
        cmd.rate = grad >= 0.0 ? rate_limit : -rate_limit;
        cmd.saturated = true;
        return cmd;
    }

    const double rate = -tau_desired / (2.0 * spec.momentum() * sin_phi);
    cmd.rate = std::clamp(rate, -rate_limit, rate_limit);
    cmd.saturated = cmd.rate != rate;
    return cmd;
}

CmgState step_gimbal(const CmgState& state, double rate_cmd, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step_gimbal: dt must be > 0");
    }
    CmgState next = state;
    next.phi_rate = std::clamp(rate_cmd, -state.rate_limit, state.rate_limit);
    next.phi = state.phi + next.phi_rate * dt;
    if (next.phi <= state.angle_min) {
        next.phi = state.angle_min;
        next.phi_rate = 0.0;
    } else if (next.phi >= state.angle_max) {
        next.phi = state.angle_max;
        next.phi_rate = 0.0;
    }
    return next;
}

double torque_envelope(double phi, const FlywheelSpec& spec, double rate_limit) {
    spec.validate();
    return 2.0 * spec.momentum() * std::abs(std::sin(phi)) * rate_limit;
}

}  // namespace gyrohap
