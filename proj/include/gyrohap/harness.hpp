#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gyrohap/cmg.hpp"
#include "gyrohap/impedance.hpp"
#include "gyrohap/plant.hpp"
#include "gyrohap/sensing.hpp"
#include "gyrohap/swing.hpp"

namespace gyrohap {

/// One control tick. omega and omega_dot are the *sensed* signals;
/// tau_desired is exactly the impedance law applied to them.
struct TraceSample {
    double t = 0.0;
    double theta = 0.0;
    double omega = 0.0;
    double omega_dot = 0.0;
    double tau_desired = 0.0;
    double tau_achieved = 0.0;
    bool saturated = false;
};

struct TrackingMetrics {
    double rms_error = 0.0;       ///< N·m, over samples with |τ_des| > 1% of peak
    double peak_desired = 0.0;    ///< N·m
    double normalized_rmse = 0.0; ///< rms_error / peak_desired (0 when peak is 0)
    std::optional<double> dominant_oscillation_hz;  ///< elastic conditions only
};

struct ConditionTrace {
    std::string condition;
    std::vector<TraceSample> samples;
    std::vector<double> gimbal_angles;  ///< post-step φ per sample; not exported
    double ring_start_time = 0.0;  ///< end of the last swing
    bool elastic = false;          ///< condition carried nonzero elastic gains
    bool unstable = false;         ///< elastic simulation diverged; trace truncated
    TrackingMetrics metrics;
};

/// Everything a condition run needs besides the condition itself.
struct HarnessConfig {
    PlantParams plant;
    FlywheelSpec flywheel;
    CmgState cmg_initial;
    ImuModel imu;
};

/// Closed-loop replication run: prescribed swing trajectory → gyro
/// sampling → acceleration estimate → impedance law → inverse gimbal rate
/// → rate-limited gimbal step → achieved torque from the forward law.
/// The hand is the position source and the device the torque source; the
/// trajectory is not perturbed by the rendered torque.
ConditionTrace run_condition(const Condition& condition, const SwingProfile& profile,
                             const HarnessConfig& config);

TrackingMetrics tracking_metrics(const ConditionTrace& trace);

/// Zero-crossing frequency estimate of `values` (paired with `times`),
/// using the span between first and last crossing. Needs >= 2 crossings.
std::optional<double> dominant_frequency(const std::vector<double>& times,
                                         const std::vector<double>& values);

/// CSV with header t,theta,omega,omega_dot,tau_desired,tau_achieved,saturated.
/// Floats are written in shortest round-trip form; re-import is bit-exact.
void export_trace(const ConditionTrace& trace, const std::filesystem::path& path);

ConditionTrace import_trace(const std::filesystem::path& path);

}  // namespace gyrohap
