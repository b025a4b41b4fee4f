#include "gyrohap/impedance.hpp"

#include <cmath>
#include <stdexcept>

namespace gyrohap {

void ImpedanceParams::validate() const {
    if (!std::isfinite(delta_inertia) || !std::isfinite(delta_damping)) {
        throw std::invalid_argument("impedance: non-finite delta parameter");
    }
    if (!(k_r >= 0.0) || !std::isfinite(k_r)) {
        throw std::invalid_argument("impedance: k_r must be >= 0");
    }
    if (!(c_r >= 0.0) || !std::isfinite(c_r)) {
        throw std::invalid_argument("impedance: c_r must be >= 0");
    }
    if (!(tip_inertia > 0.0) || !std::isfinite(tip_inertia)) {
        throw std::invalid_argument("impedance: tip_inertia must be > 0");
    }
}

ElasticStepResult elastic_step(const ElasticState& state, double base_accel_measured, double dt,
                               const ImpedanceParams& params, double divergence_bound) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("elastic_step: dt must be > 0");
    }
    if (!std::isfinite(base_accel_measured)) {
        throw std::invalid_argument("elastic_step: non-finite base acceleration");
    }

    ElasticState s = state;

    // base follows the measured motion
    s.alpha1 = base_accel_measured;
    s.omega1 += s.alpha1 * dt;
    s.theta1 += s.omega1 * dt;

    // bend of the virtual rod, using the tip state from the previous step
    const double d_theta = s.theta2 - s.theta1;
    const double d_omega = s.omega2 - s.omega1;

    const double torque = -params.k_r * d_theta - params.c_r * d_omega;

    // tip responds to the restorative torque
    s.alpha2 = torque / params.tip_inertia;
    s.omega2 += s.alpha2 * dt;
    s.theta2 += s.omega2 * dt;

    ElasticStepResult result;
    result.torque = torque;
    result.state = s;
    result.diverged = !(std::abs(d_theta) <= divergence_bound) || !std::isfinite(torque);
    return result;
}

double generated_torque(double omega_meas, double alpha_meas, double elastic_torque,
                        const ImpedanceParams& params) {
    if (!std::isfinite(omega_meas) || !std::isfinite(alpha_meas) ||
        !std::isfinite(elastic_torque)) {
        throw std::invalid_argument("generated_torque: non-finite input");
    }
    return -params.delta_inertia * alpha_meas - params.delta_damping * omega_meas -
           elastic_torque;
}

const std::vector<Condition>& table1_conditions() {
    static const std::vector<Condition> conditions = [] {
        auto make = [](std::string name, double di, double dd, double kr, double cr) {
            Condition c;
            c.name = std::move(name);
            c.params.delta_inertia = di;
            c.params.delta_damping = dd;
            c.params.k_r = kr;
            c.params.c_r = cr;
            return c;
        };
        return std::vector<Condition>{
            make("increased-inertia", 0.002, 0.0, 0.0, 0.0),
            make("decreased-inertia", -0.002, 0.0, 0.0, 0.0),
            make("damping-increase", 0.0, 0.02, 0.0, 0.0),
            make("damping-decrease", 0.0, -0.02, 0.0, 0.0),
            make("elasticity-increase", 0.0, 0.0, 0.2, 0.001),
        };
    }();
    return conditions;
}

const Condition* find_condition(std::string_view name) {
    for (const Condition& c : table1_conditions()) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

}  // namespace gyrohap
