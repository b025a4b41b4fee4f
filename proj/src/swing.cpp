#include "gyrohap/swing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gyrohap {

namespace {

// Quintic minimum-jerk stroke from 0 to `displacement` over [0, duration].
SwingKinematics min_jerk_stroke(double displacement, double duration, double s) {
    const double u = s / duration;
    const double u2 = u * u;
    const double u3 = u2 * u;
    SwingKinematics k;
    k.theta = displacement * (10.0 * u3 - 15.0 * u3 * u + 6.0 * u3 * u2);
    k.omega = displacement / duration * (30.0 * u2 - 60.0 * u3 + 30.0 * u3 * u);
    k.alpha = displacement / (duration * duration) * (60.0 * u - 180.0 * u2 + 120.0 * u3);
    return k;
}

}  // namespace

void SwingProfile::validate() const {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("swing: amplitude must be > 0");
    }
    if (!(frequency > 0.0) || !std::isfinite(frequency)) {
        throw std::invalid_argument("swing: frequency must be > 0");
    }
    if (n_swings < 1) {
        throw std::invalid_argument("swing: n_swings must be >= 1");
    }
    if (!(rest_between >= 0.0) || !std::isfinite(rest_between)) {
        throw std::invalid_argument("swing: rest_between must be >= 0");
    }
}

double SwingProfile::swing_duration() const {
    return shape == SwingShape::Sinusoid ? 1.0 / frequency : 0.5 / frequency;
}

double SwingProfile::total_duration() const {
    return n_swings * (swing_duration() + rest_between);
}

double SwingProfile::last_swing_end() const {
    return (n_swings - 1) * (swing_duration() + rest_between) + swing_duration();
}

SwingKinematics swing_kinematics(const SwingProfile& profile, double t) {
    profile.validate();
    if (!std::isfinite(t)) {
        throw std::invalid_argument("swing_kinematics: non-finite time");
    }

    const double t_swing = profile.swing_duration();
    const double period = t_swing + profile.rest_between;

    // hold position before/after swing k (minimum-jerk strokes alternate)
    auto hold_before = [&](int k) {
        if (profile.shape == SwingShape::Sinusoid) {
            return 0.0;
        }
        return (k % 2 == 0) ? 0.0 : profile.amplitude;
    };

    if (t <= 0.0) {
        return SwingKinematics{hold_before(0), 0.0, 0.0};
    }

    const int k = static_cast<int>(std::floor(t / period));
    if (k >= profile.n_swings) {
        return SwingKinematics{hold_before(profile.n_swings), 0.0, 0.0};
    }

    const double s = t - k * period;
    if (s >= t_swing) {
        return SwingKinematics{hold_before(k + 1), 0.0, 0.0};
    }

    if (profile.shape == SwingShape::Sinusoid) {
        const double w = 2.0 * std::numbers::pi * profile.frequency;
        SwingKinematics kin;
        kin.theta = profile.amplitude * std::sin(w * s);
        kin.omega = profile.amplitude * w * std::cos(w * s);
        kin.alpha = -profile.amplitude * w * w * std::sin(w * s);
        return kin;
    }

    const double from = hold_before(k);
    const double to = hold_before(k + 1);
    SwingKinematics kin = min_jerk_stroke(to - from, t_swing, s);
    kin.theta += from;
    return kin;
}

}  // namespace gyrohap
