#include "gyrohap/ratings.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "gyrohap/csv.hpp"
#include "gyrohap/errors.hpp"

namespace gyrohap {

const std::vector<std::string>& default_pair_labels() {
    static const std::vector<std::string> labels = {
        "Long-Short",  "Wide-Narrow",    "Thick-Thin",   "Hard-Soft",
        "Heavy-Light", "Stiff-Flexible", "Sticky-Smooth"};
    return labels;
}

namespace {

template <typename T>
std::vector<T> unique_in_order(const std::vector<RatingMatrix::Record>& records,
                               T RatingMatrix::Record::* field) {
    std::vector<T> out;
    for (const auto& r : records) {
        if (std::find(out.begin(), out.end(), r.*field) == out.end()) {
            out.push_back(r.*field);
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> RatingMatrix::participants() const {
    return unique_in_order(records, &Record::participant);
}

std::vector<std::string> RatingMatrix::conditions() const {
    return unique_in_order(records, &Record::condition);
}

RatingMatrix load_ratings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open ratings file " + path.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("ratings file " + path.string() + " is empty");
    }
    auto header = csv::split_line(csv::trim(line));
    if (header.size() < 4 || csv::trim(header[0]) != "participant" ||
        csv::trim(header[1]) != "condition" || csv::trim(header[2]) != "repetition") {
        throw ConfigError("ratings header must be participant,condition,repetition,<pairs...>");
    }

    RatingMatrix m;
    for (size_t i = 3; i < header.size(); ++i) {
        m.pair_labels.emplace_back(csv::trim(header[i]));
        if (m.pair_labels.back().empty()) {
            throw ConfigError("ratings header: empty adjective-pair name in column " +
                              std::to_string(i + 1));
        }
    }

    std::set<std::tuple<std::string, std::string, int>> seen;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) {
            continue;
        }
        auto fields = csv::split_line(csv::trim(line));
        if (fields.size() != header.size()) {
            throw ConfigError("ratings line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }

        RatingMatrix::Record rec;
        rec.participant = std::string(csv::trim(fields[0]));
        rec.condition = std::string(csv::trim(fields[1]));
        rec.repetition = static_cast<int>(
            csv::parse_long(fields[2], "repetition at line " + std::to_string(line_no)));
        if (rec.participant.empty() || rec.condition.empty()) {
            throw ConfigError("ratings line " + std::to_string(line_no) +
                              ": empty participant or condition");
        }

        if (!seen.insert({rec.participant, rec.condition, rec.repetition}).second) {
            throw ConfigError("ratings line " + std::to_string(line_no) + ": duplicate key (" +
                              rec.participant + ", " + rec.condition + ", repetition " +
                              std::to_string(rec.repetition) + ")");
        }

        for (size_t i = 3; i < fields.size(); ++i) {
            const std::string& label = m.pair_labels[i - 3];
            const double v = csv::parse_double(
                fields[i], "'" + label + "' at line " + std::to_string(line_no));
            if (v < m.likert_min || v > m.likert_max) {
                throw ConfigError("ratings line " + std::to_string(line_no) + ", column '" +
                                  label + "': value " + csv::format_double(v) +
                                  " outside Likert range [" + std::to_string(m.likert_min) +
                                  "," + std::to_string(m.likert_max) + "]");
            }
            rec.values.push_back(v);
        }
        m.records.push_back(std::move(rec));
    }

    if (m.records.empty()) {
        throw ConfigError("ratings file " + path.string() + " has no data rows");
    }
    return m;
}

void save_ratings(const RatingMatrix& ratings, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write ratings file " + path.string());
    }
    out << "participant,condition,repetition";
    for (const std::string& label : ratings.pair_labels) {
        out << ',' << label;
    }
    out << '\n';
    for (const auto& rec : ratings.records) {
        out << rec.participant << ',' << rec.condition << ',' << rec.repetition;
        for (double v : rec.values) {
            out << ',' << csv::format_double(v);
        }
        out << '\n';
    }
    if (!out) {
        throw ConfigError("write failed for ratings file " + path.string());
    }
}

ObservationMatrix average_repetitions(const RatingMatrix& ratings) {
    const size_t n_pairs = ratings.pair_labels.size();
    for (const auto& rec : ratings.records) {
        if (rec.values.size() != n_pairs) {
            throw ConfigError("ratings record for (" + rec.participant + ", " + rec.condition +
                              ") has wrong number of values");
        }
    }

    // group in first-appearance order of (participant, condition)
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::pair<Eigen::VectorXd, int>> sums;
    for (const auto& rec : ratings.records) {
        auto key = std::make_pair(rec.participant, rec.condition);
        auto it = sums.find(key);
        if (it == sums.end()) {
            keys.push_back(key);
            it = sums.emplace(key, std::make_pair(Eigen::VectorXd::Zero(n_pairs), 0)).first;
        }
        for (size_t i = 0; i < n_pairs; ++i) {
            it->second.first[static_cast<Eigen::Index>(i)] += rec.values[i];
        }
        it->second.second += 1;
    }

    const int reps = sums.begin()->second.second;
    for (const auto& [key, entry] : sums) {
        if (entry.second != reps) {
            throw ConfigError("ratings are incomplete: (" + key.first + ", " + key.second +
                              ") has " + std::to_string(entry.second) + " repetitions, others " +
                              std::to_string(reps));
        }
    }

    ObservationMatrix obs;
    obs.pair_labels = ratings.pair_labels;
    obs.values.resize(static_cast<Eigen::Index>(keys.size()), static_cast<Eigen::Index>(n_pairs));
    for (size_t r = 0; r < keys.size(); ++r) {
        const auto& entry = sums.at(keys[r]);
        obs.values.row(static_cast<Eigen::Index>(r)) =
            entry.first.transpose() / static_cast<double>(entry.second);
        obs.row_participant.push_back(keys[r].first);
        obs.row_condition.push_back(keys[r].second);
    }
    return obs;
}

}  // namespace gyrohap
