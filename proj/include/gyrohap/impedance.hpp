#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gyrohap {

/// Impedance target rendered by the device: differences applied on top of
/// the motion system's own inertia/damping, plus the virtual-rod gains.
/// delta_* may be negative (the decreased-inertia / decreased-damping
/// conditions); the elastic gains may not.
struct ImpedanceParams {
    double delta_inertia = 0.0;   ///< ΔI, kg·m²
    double delta_damping = 0.0;   ///< ΔD, N·m·s/rad
    double k_r = 0.0;             ///< restorative constant, N·m/rad
    double c_r = 0.0;             ///< elastic damping, N·m·s/rad
    double tip_inertia = 1.27e-3; ///< kg·m², virtual tip mass

    void validate() const;
};

/// Two-mass elastic simulation state: base (grip) and virtual tip.
/// Default-constructed state is the all-zero reset state.
struct ElasticState {
    double theta1 = 0.0, omega1 = 0.0, alpha1 = 0.0;
    double theta2 = 0.0, omega2 = 0.0, alpha2 = 0.0;

    static ElasticState reset() { return ElasticState{}; }
};

struct ElasticStepResult {
    double torque = 0.0;  ///< T_e of this step, N·m
    ElasticState state;
    bool diverged = false;  ///< |θ2−θ1| exceeded the divergence bound
};

/// One step of the virtual-rod simulation.
///
/// The base is driven by the measured angular acceleration; the relative
/// bend produces the restorative torque which in turn accelerates the tip:
///   θ̈1 ← measured accel, integrate base
///   Δθ = θ2−θ1, Δθ̇ = θ̇2−θ̇1
///   T_e = −k_r·Δθ − c_r·Δθ̇
///   θ̈2 = T_e / tip_inertia, integrate tip
/// Each integration is the same velocity-then-position Euler as the plant.
ElasticStepResult elastic_step(const ElasticState& state, double base_accel_measured, double dt,
                               const ImpedanceParams& params, double divergence_bound = 10.0);

/// τ_gen = −ΔI·ω̇ − ΔD·ω − T_e
double generated_torque(double omega_meas, double alpha_meas, double elastic_torque,
                        const ImpedanceParams& params);

struct Condition {
    std::string name;
    ImpedanceParams params;
};

/// The five stock impedance conditions. tip_inertia carries the library
/// default; the harness substitutes the configured plant inertia.
const std::vector<Condition>& table1_conditions();

/// Lookup by name; returns nullptr when absent.
const Condition* find_condition(std::string_view name);

}  // namespace gyrohap
