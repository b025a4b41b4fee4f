#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace gyrohap {

/// Gyro signal path model. The device paper gives no IMU figures; these
/// defaults are typical consumer-MEMS values and everything is
/// configurable. filter_cutoff <= 0 disables the acceleration smoothing
/// (exact backward difference).
struct ImuModel {
    double sample_rate = 1000.0;   ///< Hz
    double gyro_noise_std = 0.005; ///< rad/s, 0 disables
    double quantization = 0.0;     ///< rad/s per LSB, 0 disables
    double filter_cutoff = 50.0;   ///< Hz, <= 0 disables smoothing
    std::uint64_t seed = 0;

    void validate() const;
};

/// Stateful gyro: additive Gaussian noise then floor-quantization.
/// Owns its RNG; identical seeds and inputs replay identical streams.
class GyroSensor {
public:
    explicit GyroSensor(const ImuModel& model);

    double sample(double true_omega);

    const ImuModel& model() const { return model_; }

private:
    ImuModel model_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> noise_;
};

/// Causal angular-acceleration estimator: backward difference of the
/// sampled rate followed by a single-pole low-pass. The first pushed
/// sample has no predecessor and yields 0.
class AccelEstimator {
public:
    explicit AccelEstimator(const ImuModel& model);

    double push(double omega_sample);

    void reset();

private:
    double rate_;
    double alpha_;  // filter coefficient; 1 = passthrough
    bool has_prev_ = false;
    double prev_omega_ = 0.0;
    double filtered_ = 0.0;
};

/// Window form of the estimator: runs the causal chain over the window
/// and returns the final estimate. Throws on fewer than 2 samples.
double estimate_accel(std::span<const double> omega_samples, const ImuModel& model);

}  // namespace gyrohap
