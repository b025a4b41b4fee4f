#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace gyrohap {

/// Default adjective pairs of the rating instrument.
const std::vector<std::string>& default_pair_labels();

/// Raw Likert ratings: one record per (participant, condition, repetition).
struct RatingMatrix {
    std::vector<std::string> pair_labels;

    struct Record {
        std::string participant;
        std::string condition;
        int repetition = 0;
        std::vector<double> values;  ///< one per adjective pair
    };
    std::vector<Record> records;

    int likert_min = 1;
    int likert_max = 7;

    /// Participant / condition names in first-appearance order.
    std::vector<std::string> participants() const;
    std::vector<std::string> conditions() const;
};

/// Observation matrix after repetition averaging: one row per
/// (participant, condition), one column per adjective pair.
struct ObservationMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> pair_labels;
    std::vector<std::string> row_participant;
    std::vector<std::string> row_condition;
};

/// CSV schema: participant,condition,repetition,<pair-1>,...,<pair-n>.
/// Rejects out-of-range Likert values (naming the cell) and duplicated
/// (participant, condition, repetition) keys.
RatingMatrix load_ratings(const std::filesystem::path& path);

void save_ratings(const RatingMatrix& ratings, const std::filesystem::path& path);

/// Mean over the repetition axis. Every (participant, condition) pair must
/// carry the same repetition count ("complete" design).
ObservationMatrix average_repetitions(const RatingMatrix& ratings);

}  // namespace gyrohap
