#include "gyrohap/plant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gyrohap/errors.hpp"

namespace gyrohap {

void PlantParams::validate() const {
    if (!(inertia_total > 0.0) || !std::isfinite(inertia_total)) {
        throw std::invalid_argument("plant: inertia_total must be > 0");
    }
    if (!(time_step > 0.0) || !std::isfinite(time_step)) {
        throw std::invalid_argument("plant: time_step must be > 0");
    }
    if (!(damping_inherent >= 0.0) || !std::isfinite(damping_inherent)) {
        throw std::invalid_argument("plant: damping_inherent must be >= 0");
    }
}

PlantState plant_step(const PlantState& state, double tau_human, double tau_gen,
                      const PlantParams& params) {
    params.validate();
    if (!std::isfinite(tau_human) || !std::isfinite(tau_gen)) {
        throw std::invalid_argument("plant_step: non-finite torque input");
    }
    if (!std::isfinite(state.theta) || !std::isfinite(state.omega)) {
        throw std::invalid_argument("plant_step: non-finite state");
    }

    const double dt = params.time_step;
    PlantState next;
    next.omega_dot =
        (tau_human + tau_gen - params.damping_inherent * state.omega) / params.inertia_total;
    next.omega = state.omega + next.omega_dot * dt;
    next.theta = state.theta + next.omega * dt;
    next.time = state.time + dt;
    return next;
}

std::vector<PlantState> simulate(const PlantParams& params, const TorqueSource& torque,
                                 double duration, PlantState initial) {
    params.validate();
    if (!(duration > 0.0)) {
        throw std::invalid_argument("simulate: duration must be > 0");
    }

    const size_t n_steps = static_cast<size_t>(std::ceil(duration / params.time_step));
    std::vector<PlantState> trace;
    trace.reserve(n_steps + 1);
    trace.push_back(initial);

    for (size_t i = 0; i < n_steps; ++i) {
        double tau = 0.0;
        try {
            tau = torque(trace.back());
        } catch (const std::exception& e) {
            throw NumericalError("simulate: torque source failed at t=" +
                                 std::to_string(trace.back().time) + " after " +
                                 std::to_string(trace.size()) + " states: " + e.what());
        }
        if (!std::isfinite(tau)) {
            throw NumericalError("simulate: torque source returned non-finite value at t=" +
                                 std::to_string(trace.back().time) + " after " +
                                 std::to_string(trace.size()) + " states");
        }
        trace.push_back(plant_step(trace.back(), tau, 0.0, params));
    }
    return trace;
}

}  // namespace gyrohap
