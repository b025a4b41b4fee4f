#include "gyrohap/sensing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gyrohap {

void ImuModel::validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw std::invalid_argument("imu: sample_rate must be > 0");
    }
    if (!(gyro_noise_std >= 0.0) || !std::isfinite(gyro_noise_std)) {
        throw std::invalid_argument("imu: gyro_noise_std must be >= 0");
    }
    if (!(quantization >= 0.0) || !std::isfinite(quantization)) {
        throw std::invalid_argument("imu: quantization must be >= 0");
    }
    if (filter_cutoff > 0.0 && !(filter_cutoff < sample_rate / 2.0)) {
        throw std::invalid_argument("imu: filter_cutoff must be below Nyquist");
    }
}

GyroSensor::GyroSensor(const ImuModel& model)
    : model_(model), rng_(model.seed), noise_(0.0, model.gyro_noise_std > 0.0 ? model.gyro_noise_std : 1.0) {
    model_.validate();
}

double GyroSensor::sample(double true_omega) {
    if (!std::isfinite(true_omega)) {
        throw std::invalid_argument("gyro: non-finite input rate");
    }
    double omega = true_omega;
    if (model_.gyro_noise_std > 0.0) {
        omega += noise_(rng_);
    }
    if (model_.quantization > 0.0) {
        omega = std::floor(omega / model_.quantization) * model_.quantization;
    }
    return omega;
}

AccelEstimator::AccelEstimator(const ImuModel& model) {
    model.validate();
    rate_ = model.sample_rate;
    if (model.filter_cutoff > 0.0) {
        alpha_ = 1.0 - std::exp(-2.0 * std::numbers::pi * model.filter_cutoff / rate_);
    } else {
        alpha_ = 1.0;
    }
}

double AccelEstimator::push(double omega_sample) {
    if (!has_prev_) {
        has_prev_ = true;
        prev_omega_ = omega_sample;
        return filtered_;
    }
    const double diff = (omega_sample - prev_omega_) * rate_;
    prev_omega_ = omega_sample;
    if (alpha_ == 1.0) {
        filtered_ = diff;  // disabled filter: exact backward difference
    } else {
        filtered_ += alpha_ * (diff - filtered_);
    }
    return filtered_;
}

void AccelEstimator::reset() {
    has_prev_ = false;
    prev_omega_ = 0.0;
    filtered_ = 0.0;
}

double estimate_accel(std::span<const double> omega_samples, const ImuModel& model) {
    if (omega_samples.size() < 2) {
        throw std::invalid_argument("estimate_accel: need at least 2 samples");
    }
    AccelEstimator est(model);
    double out = 0.0;
    bool first = true;
    for (double w : omega_samples) {
        if (first) {
            est.push(w);
            first = false;
            continue;
        }
        out = est.push(w);
    }
    return out;
}

}  // namespace gyrohap
