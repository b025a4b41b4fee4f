#include "gyrohap/factor_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "gyrohap/csv.hpp"
#include "gyrohap/errors.hpp"

namespace gyrohap {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    return out;
}

void write_factor_header(std::ofstream& out, const std::string& first, Eigen::Index k) {
    out << first;
    for (Eigen::Index j = 0; j < k; ++j) {
        out << ",factor_" << (j + 1);
    }
    out << '\n';
}

}  // namespace

void write_scree_csv(const Eigen::VectorXd& eigenvalues, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "component,eigenvalue\n";
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        out << (i + 1) << ',' << csv::format_double(eigenvalues[i]) << '\n';
    }
}

void write_loadings_csv(const Eigen::MatrixXd& loadings,
                        const std::vector<std::string>& variable_labels,
                        const std::filesystem::path& path) {
    auto out = open_out(path);
    write_factor_header(out, "variable", loadings.cols());
    for (Eigen::Index i = 0; i < loadings.rows(); ++i) {
        out << variable_labels[static_cast<size_t>(i)];
        for (Eigen::Index j = 0; j < loadings.cols(); ++j) {
            out << ',' << csv::format_double(loadings(i, j));
        }
        out << '\n';
    }
}

void write_summary_csv(const FactorSummary& summary, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_factor_header(out, "metric", summary.ss_loadings.size());
    auto row = [&](const char* name, const Eigen::VectorXd& v) {
        out << name;
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            out << ',' << csv::format_double(v[j]);
        }
        out << '\n';
    };
    row("ss_loadings", summary.ss_loadings);
    row("pct_variance", summary.pct_variance);
    row("cumulative", summary.cumulative);
}

void write_scores_csv(const Eigen::MatrixXd& scores,
                      const std::vector<std::string>& row_participant,
                      const std::vector<std::string>& row_condition,
                      const std::filesystem::path& path) {
    auto out = open_out(path);
    write_factor_header(out, "participant,condition", scores.cols());
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        out << row_participant[static_cast<size_t>(i)] << ','
            << row_condition[static_cast<size_t>(i)];
        for (Eigen::Index j = 0; j < scores.cols(); ++j) {
            out << ',' << csv::format_double(scores(i, j));
        }
        out << '\n';
    }
}

void write_condition_means_csv(const ConditionMeans& means, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_factor_header(out, "condition", means.means.cols());
    for (Eigen::Index i = 0; i < means.means.rows(); ++i) {
        out << means.conditions[static_cast<size_t>(i)];
        for (Eigen::Index j = 0; j < means.means.cols(); ++j) {
            out << ',' << csv::format_double(means.means(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_loadings_csv(const std::filesystem::path& path,
                                  std::vector<std::string>* variable_labels) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open loadings file " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("loadings file " + path.string() + " is empty");
    }
    const auto header = csv::split_line(csv::trim(line));
    if (header.size() < 2 || csv::trim(header[0]) != "variable") {
        throw ConfigError("loadings file " + path.string() +
                          ": expected header variable,factor_1,...");
    }
    const size_t k = header.size() - 1;

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) {
            continue;
        }
        const auto fields = csv::split_line(csv::trim(line));
        if (fields.size() != header.size()) {
            throw ConfigError("loadings file " + path.string() + " line " +
                              std::to_string(line_no) + ": wrong field count");
        }
        labels.emplace_back(csv::trim(fields[0]));
        std::vector<double> row;
        for (size_t j = 1; j < fields.size(); ++j) {
            row.push_back(csv::parse_double(
                fields[j], path.filename().string() + ":" + std::to_string(line_no)));
        }
        rows.push_back(std::move(row));
    }

    Eigen::MatrixXd L(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < k; ++j) {
            L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    if (variable_labels != nullptr) {
        *variable_labels = std::move(labels);
    }
    return L;
}

void print_summary(const FactorSummary& summary, std::ostream& out) {
    const Eigen::Index k = summary.ss_loadings.size();
    auto row = [&](const char* name, const Eigen::VectorXd& v) {
        out << std::left << std::setw(24) << name;
        for (Eigen::Index j = 0; j < k; ++j) {
            out << std::right << std::setw(12) << std::fixed << std::setprecision(6) << v[j];
        }
        out << '\n';
    };
    out << std::left << std::setw(24) << "";
    for (Eigen::Index j = 0; j < k; ++j) {
        out << std::right << std::setw(12) << ("Factor " + std::to_string(j + 1));
    }
    out << '\n';
    row("Sum of Squared Loadings", summary.ss_loadings);
    row("% of Variance", summary.pct_variance);
    row("Cumulative %", summary.cumulative);
    out.unsetf(std::ios::fixed);
}

}  // namespace gyrohap
