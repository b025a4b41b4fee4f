#pragma once

namespace gyrohap {

enum class SwingShape {
    /// θ = A·sin(2πf·s): one full oscillation per swing. The idealized
    /// lab excitation; velocity is discontinuous at the swing boundaries.
    Sinusoid,
    /// One minimum-jerk stroke per swing (duration 1/(2f)), alternating
    /// direction between the hold positions 0 and A. C² everywhere,
    /// starts and ends at rest.
    MinimumJerk,
};

/// Prescribed wrist flexion/extension trajectory: n_swings swings, each
/// followed by rest_between seconds of hold.
struct SwingProfile {
    double amplitude = 0.5;   ///< rad
    double frequency = 1.0;   ///< Hz
    int n_swings = 3;
    double rest_between = 2.0;  ///< s
    SwingShape shape = SwingShape::MinimumJerk;

    void validate() const;

    double swing_duration() const;  ///< s, one swing
    double total_duration() const;  ///< s, swings plus trailing rests
    double last_swing_end() const;  ///< s, start of the final ring-down window
};

struct SwingKinematics {
    double theta = 0.0;  ///< rad
    double omega = 0.0;  ///< rad/s
    double alpha = 0.0;  ///< rad/s²
};

/// Analytic trajectory sample; derivatives are closed-form, never
/// numerically differenced. Rest gaps return (θ_hold, 0, 0).
SwingKinematics swing_kinematics(const SwingProfile& profile, double t);

}  // namespace gyrohap
