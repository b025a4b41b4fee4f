#include "gyrohap/harness.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gyrohap/csv.hpp"
#include "gyrohap/errors.hpp"

namespace gyrohap {

ConditionTrace run_condition(const Condition& condition, const SwingProfile& profile,
                             const HarnessConfig& config) {
    condition.params.validate();
    profile.validate();
    config.plant.validate();
    config.flywheel.validate();
    config.cmg_initial.validate();
    config.imu.validate();

    const double dt = config.plant.time_step;
    if (std::abs(config.imu.sample_rate * dt - 1.0) > 1e-9) {
        throw ConfigError("harness: imu sample_rate must match the control rate 1/time_step");
    }

    ConditionTrace trace;
    trace.condition = condition.name;
    trace.ring_start_time = profile.last_swing_end();
    trace.elastic = condition.params.k_r != 0.0 || condition.params.c_r != 0.0;

    const size_t n_samples = static_cast<size_t>(std::floor(profile.total_duration() / dt)) + 1;
    trace.samples.reserve(n_samples);

    GyroSensor gyro(config.imu);
    AccelEstimator accel(config.imu);
    ElasticState elastic;
    CmgState cmg = config.cmg_initial;

    for (size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const SwingKinematics kin = swing_kinematics(profile, t);

        const double omega_meas = gyro.sample(kin.omega);
        const double alpha_est = accel.push(omega_meas);

        const ElasticStepResult el = elastic_step(elastic, alpha_est, dt, condition.params);
        elastic = el.state;

        const double tau_desired =
            generated_torque(omega_meas, alpha_est, el.torque, condition.params);

        const GimbalRateCommand cmd =
            inverse_gimbal_rate(tau_desired, cmg.phi, config.flywheel, cmg.rate_limit);
        const CmgState stepped = step_gimbal(cmg, cmd.rate, dt);
        const bool range_stop = stepped.phi_rate == 0.0 && cmd.rate != 0.0;
        cmg = stepped;

        TraceSample sample;
        sample.t = t;
        sample.theta = kin.theta;
        sample.omega = omega_meas;
        sample.omega_dot = alpha_est;
        sample.tau_desired = tau_desired;
        sample.tau_achieved = forward_torque(cmg, config.flywheel);
        sample.saturated = cmd.saturated || range_stop;
        trace.samples.push_back(sample);
        trace.gimbal_angles.push_back(cmg.phi);

        if (el.diverged) {
            trace.unstable = true;
            break;
        }
    }

    trace.metrics = tracking_metrics(trace);
    return trace;
}

TrackingMetrics tracking_metrics(const ConditionTrace& trace) {
    if (trace.samples.empty()) {
        throw std::invalid_argument("tracking_metrics: empty trace");
    }

    TrackingMetrics m;
    for (const TraceSample& s : trace.samples) {
        m.peak_desired = std::max(m.peak_desired, std::abs(s.tau_desired));
    }

    if (m.peak_desired > 0.0) {
        const double floor = 0.01 * m.peak_desired;
        double sum_sq = 0.0;
        size_t n = 0;
        for (const TraceSample& s : trace.samples) {
            if (std::abs(s.tau_desired) > floor) {
                const double e = s.tau_achieved - s.tau_desired;
                sum_sq += e * e;
                ++n;
            }
        }
        if (n > 0) {
            m.rms_error = std::sqrt(sum_sq / static_cast<double>(n));
        }
        m.normalized_rmse = m.rms_error / m.peak_desired;
    }

    // Ring frequency is only meaningful when a virtual rod was simulated:
    // measure the desired-torque oscillation after the last swing.
    if (trace.elastic) {
        std::vector<double> times, values;
        for (const TraceSample& s : trace.samples) {
            if (s.t >= trace.ring_start_time) {
                times.push_back(s.t);
                values.push_back(s.tau_desired);
            }
        }
        m.dominant_oscillation_hz = dominant_frequency(times, values);
    }
    return m;
}

std::optional<double> dominant_frequency(const std::vector<double>& times,
                                         const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2) {
        return std::nullopt;
    }

    // Linearly interpolated zero-crossing instants; samples that are
    // exactly zero extend the previous sign.
    std::vector<double> crossings;
    int prev_sign = 0;
    double prev_t = times[0];
    double prev_v = values[0];
    for (size_t i = 0; i < times.size(); ++i) {
        const int sign = values[i] > 0.0 ? 1 : (values[i] < 0.0 ? -1 : 0);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) {
            const double frac = prev_v / (prev_v - values[i]);
            crossings.push_back(prev_t + frac * (times[i] - prev_t));
        }
        if (sign != 0) {
            prev_sign = sign;
            prev_t = times[i];
            prev_v = values[i];
        }
    }

    if (crossings.size() < 2) {
        return std::nullopt;
    }
    const double span = crossings.back() - crossings.front();
    if (!(span > 0.0)) {
        return std::nullopt;
    }
    return static_cast<double>(crossings.size() - 1) / (2.0 * span);
}

void export_trace(const ConditionTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
    if (!out) {
        throw ConfigError("export_trace: cannot open " + path.string());
    }
    out << "t,theta,omega,omega_dot,tau_desired,tau_achieved,saturated\n";
    for (const TraceSample& s : trace.samples) {
        out << csv::format_double(s.t) << ',' << csv::format_double(s.theta) << ','
            << csv::format_double(s.omega) << ',' << csv::format_double(s.omega_dot) << ','
            << csv::format_double(s.tau_desired) << ',' << csv::format_double(s.tau_achieved)
            << ',' << (s.saturated ? '1' : '0') << '\n';
    }
    if (!out) {
        throw ConfigError("export_trace: write failed for " + path.string());
    }
}

ConditionTrace import_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("import_trace: cannot open " + path.string());
    }

    ConditionTrace trace;
    trace.condition = path.stem().string();
    if (const Condition* cond = find_condition(trace.condition)) {
        trace.elastic = cond->params.k_r != 0.0 || cond->params.c_r != 0.0;
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("import_trace: empty file " + path.string());
    }
    if (std::string(csv::trim(line)) != "t,theta,omega,omega_dot,tau_desired,tau_achieved,saturated") {
        throw ConfigError("import_trace: unexpected header in " + path.string());
    }

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) {
            continue;
        }
        const auto fields = csv::split_line(csv::trim(line));
        if (fields.size() != 7) {
            throw ConfigError("import_trace: line " + std::to_string(line_no) + " of " +
                              path.string() + " has " + std::to_string(fields.size()) +
                              " fields, expected 7");
        }
        const std::string ctx = path.filename().string() + ":" + std::to_string(line_no);
        TraceSample s;
        s.t = csv::parse_double(fields[0], ctx);
        s.theta = csv::parse_double(fields[1], ctx);
        s.omega = csv::parse_double(fields[2], ctx);
        s.omega_dot = csv::parse_double(fields[3], ctx);
        s.tau_desired = csv::parse_double(fields[4], ctx);
        s.tau_achieved = csv::parse_double(fields[5], ctx);
        s.saturated = csv::parse_long(fields[6], ctx) != 0;
        trace.samples.push_back(s);
    }
    return trace;
}

}  // namespace gyrohap
