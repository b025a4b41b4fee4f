#pragma once

#include <functional>
#include <vector>

namespace gyrohap {

/// Physical constants of the hand+device rotational system.
///
/// The inherent damping is assumed near zero for a wielded object; the
/// default total inertia is calibrated so the stock elastic condition
/// rings at ~2 Hz (it is not a measured device constant).
struct PlantParams {
    double inertia_total = 1.27e-3;   ///< kg·m², hand+device about the pitch axis
    double damping_inherent = 0.0;    ///< N·m·s/rad
    double time_step = 1e-3;          ///< s

    void validate() const;
};

/// Angular kinematic state of the 1-DoF motion system.
struct PlantState {
    double theta = 0.0;      ///< rad
    double omega = 0.0;      ///< rad/s
    double omega_dot = 0.0;  ///< rad/s²
    double time = 0.0;       ///< s
};

/// One semi-implicit Euler step of  I·ω̇ = τ_h + τ_gen − D·ω.
/// Velocity is updated first, then position from the new velocity.
/// Throws std::invalid_argument on non-finite inputs.
PlantState plant_step(const PlantState& state, double tau_human, double tau_gen,
                      const PlantParams& params);

/// Torque as a function of the current plant state (state carries time).
using TorqueSource = std::function<double(const PlantState&)>;

/// Fixed-rate rollout: returns ceil(duration/dt)+1 states, the first being
/// `initial`. A torque source that throws or returns a non-finite value
/// aborts the run with a diagnostic carrying the partial-trace length.
std::vector<PlantState> simulate(const PlantParams& params, const TorqueSource& torque,
                                 double duration, PlantState initial = {});

}  // namespace gyrohap
