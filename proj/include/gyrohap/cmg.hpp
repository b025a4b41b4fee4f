#pragma once

#include <numbers>

namespace gyrohap {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rpm_to_rad_per_s(double rpm) { return rpm * 2.0 * std::numbers::pi / 60.0; }

/// Spinning flywheel of one CMG unit. The scissored pair carries two of
/// these at opposite gimbal phase; all torque formulas below already
/// account for the pair.
struct FlywheelSpec {
    double inertia_fw = 1.27e-5;                    ///< kg·m² about the spin axis
    double spin_rate = rpm_to_rad_per_s(8000.0);    ///< Ω, rad/s

    /// Angular momentum h = I_fw·Ω, N·m·s.
    double momentum() const { return inertia_fw * spin_rate; }

    void validate() const;
};

/// Gimbal state of the scissored pair at angles (φ, −φ). φ is measured
/// from the torque-null orientation; the pair's axial momentum is
/// 2·h·cos(φ), so the null sits at φ = 0 and peak authority at φ = ±90°.
struct CmgState {
    double phi = deg_to_rad(90.0);        ///< rad
    double phi_rate = 0.0;                ///< rad/s, applied rate of last step
    double rate_limit = 20.0;             ///< rad/s
    double angle_min = deg_to_rad(10.0);  ///< rad
    double angle_max = deg_to_rad(170.0); ///< rad

    void validate() const;
};

/// Gimbal orientations with |sin φ| below this are treated as singular:
/// the rate needed there exceeds any plausible motor. 0.05 is just under
/// sin(3°); the inverse map stays exact for |sin φ| >= 0.05.
inline constexpr double kSingularitySinEps = 0.05;

/// Pitch-axis torque of the scissored pair: τ = −2·h·sin(φ)·φ̇.
/// Off-axis components cancel between the two units.
double forward_torque(const CmgState& state, const FlywheelSpec& spec);

struct GimbalRateCommand {
    double rate = 0.0;      ///< rad/s, already clamped to ±rate_limit
    bool saturated = false; ///< rate clamp engaged or singular escape
};

/// Inverse of the forward law: φ̇ = −τ/(2·h·sin φ), clamped to the rate
/// limit. Near the singularity the command is the full-rate escape that
/// grows |sin φ|, flagged as saturated; degraded output is never thrown.
GimbalRateCommand inverse_gimbal_rate(double tau_desired, double phi, const FlywheelSpec& spec,
                                      double rate_limit);

/// Rate-limited integrator for the gimbal motor. The rate is clamped,
/// the angle advanced and held at the range stops (rate zeroed there).
CmgState step_gimbal(const CmgState& state, double rate_cmd, double dt);

/// Largest torque magnitude reachable at this gimbal angle: 2·h·|sin φ|·limit.
double torque_envelope(double phi, const FlywheelSpec& spec, double rate_limit);

}  // namespace gyrohap
