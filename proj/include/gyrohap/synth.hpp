#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gyrohap/ratings.hpp"

namespace gyrohap {

/// Generator for factor-structured Likert data, used as the recovery
/// oracle for the analysis pipeline.
struct SynthSpec {
    Eigen::MatrixXd loadings;   ///< variables × factors; default 7×4 simple structure
    int observations = 200;
    double noise_std = 0.3;     ///< unique noise on the continuous response
    double scale = 1.2;         ///< continuous-to-Likert gain around the scale midpoint
    std::uint64_t seed = 42;
    int likert_min = 1;
    int likert_max = 7;
};

/// Stock 7-variable, 4-factor simple-structure loading matrix (three
/// 2-indicator factors plus one single-indicator factor).
Eigen::MatrixXd default_synth_loadings();

/// Draws y = L·s + σ·ε per observation and maps it onto the Likert range
/// by round-and-clamp. Factor scores are exactly whitened over the sample
/// so the structure survives at finite n; rows cycle through the stock
/// condition names. Deterministic under the seed.
RatingMatrix synthesize_ratings(const SynthSpec& spec);

}  // namespace gyrohap
