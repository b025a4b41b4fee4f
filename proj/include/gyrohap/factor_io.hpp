#pragma once

#include <filesystem>
#include <iosfwd>

#include "gyrohap/factor_analysis.hpp"

namespace gyrohap {

/// Plot-ready CSV emitters for a fitted factor model. All floats are
/// shortest round-trip decimals, UTF-8, LF endings.
void write_scree_csv(const Eigen::VectorXd& eigenvalues, const std::filesystem::path& path);
void write_loadings_csv(const Eigen::MatrixXd& loadings,
                        const std::vector<std::string>& variable_labels,
                        const std::filesystem::path& path);
void write_summary_csv(const FactorSummary& summary, const std::filesystem::path& path);
void write_scores_csv(const Eigen::MatrixXd& scores,
                      const std::vector<std::string>& row_participant,
                      const std::vector<std::string>& row_condition,
                      const std::filesystem::path& path);
void write_condition_means_csv(const ConditionMeans& means, const std::filesystem::path& path);

/// Reads a loadings CSV back (same schema as write_loadings_csv).
Eigen::MatrixXd read_loadings_csv(const std::filesystem::path& path,
                                  std::vector<std::string>* variable_labels = nullptr);

/// Variance table in the layout of the published summary: one row per
/// metric, one column per factor.
void print_summary(const FactorSummary& summary, std::ostream& out);

}  // namespace gyrohap
