#include "gyrohap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gyrohap/errors.hpp"
#include "gyrohap/impedance.hpp"

namespace gyrohap {

Eigen::MatrixXd default_synth_loadings() {
    // Correlation-based analysis only sees standardized loadings, so the
    // indicators of a factor carry equal weights.
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(7, 4);
    L(0, 0) = 0.85;
    L(1, 0) = 0.85;
    L(2, 1) = 0.85;
    L(3, 1) = 0.85;
    L(4, 2) = 0.85;
    L(5, 2) = 0.85;
    L(6, 3) = 0.85;
    return L;
}

RatingMatrix synthesize_ratings(const SynthSpec& spec) {
    const Eigen::Index n = spec.observations;
    const Eigen::Index p = spec.loadings.rows();
    const Eigen::Index k = spec.loadings.cols();
    if (n < 2 * k || p < 1 || k < 1) {
        throw ConfigError("synth: need at least 2·factors observations");
    }
    if (!(spec.noise_std >= 0.0) || !(spec.scale > 0.0)) {
        throw ConfigError("synth: noise_std must be >= 0 and scale > 0");
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd scores(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            scores(i, j) = gauss(rng);
        }
    }

    // Whiten the drawn scores so their sample covariance is exactly the
    // identity; the declared structure then survives at finite n.
    scores.rowwise() -= scores.colwise().mean();
    Eigen::MatrixXd cov = scores.transpose() * scores / static_cast<double>(n - 1);
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("synth: drawn factor scores are rank-deficient");
    }
    scores = llt.matrixL().solve(scores.transpose()).transpose();

    Eigen::MatrixXd noise(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            noise(i, j) = gauss(rng);
        }
    }

    const Eigen::MatrixXd continuous =
        scores * spec.loadings.transpose() + spec.noise_std * noise;

    const double mid = (spec.likert_min + spec.likert_max) / 2.0;
    RatingMatrix ratings;
    ratings.likert_min = spec.likert_min;
    ratings.likert_max = spec.likert_max;
    if (p == static_cast<Eigen::Index>(default_pair_labels().size())) {
        ratings.pair_labels = default_pair_labels();
    } else {
        for (Eigen::Index j = 0; j < p; ++j) {
            ratings.pair_labels.push_back("var" + std::to_string(j + 1));
        }
    }

    const auto& conditions = table1_conditions();
    const int n_conditions = static_cast<int>(conditions.size());
    const int digits =
        static_cast<int>(std::to_string((spec.observations + n_conditions - 1) / n_conditions)
                             .size());
    for (Eigen::Index i = 0; i < n; ++i) {
        RatingMatrix::Record rec;
        std::string idx = std::to_string(static_cast<int>(i) / n_conditions + 1);
        rec.participant = "p" + std::string(digits - std::min<int>(digits, idx.size()), '0') + idx;
        rec.condition = conditions[static_cast<size_t>(i) % conditions.size()].name;
        rec.repetition = 1;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double raw = mid + spec.scale * continuous(i, j);
            // noise 0 is the exact-identifiability mode: rounding would
            // re-inject noise, so only the range clamp applies there
            const double value = spec.noise_std > 0.0 ? std::round(raw) : raw;
            rec.values.push_back(std::clamp(value, static_cast<double>(spec.likert_min),
                                            static_cast<double>(spec.likert_max)));
        }
        ratings.records.push_back(std::move(rec));
    }
    return ratings;
}

}  // namespace gyrohap
