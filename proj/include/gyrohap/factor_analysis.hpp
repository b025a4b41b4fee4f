#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gyrohap/ratings.hpp"

namespace gyrohap {

/// Pearson correlations of the observation columns; unit diagonal,
/// symmetric by construction. A constant column is an error naming the
/// adjective pair.
Eigen::MatrixXd correlation_matrix(const ObservationMatrix& obs);
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& X,
                                   const std::vector<std::string>& labels);

/// Eigenvalues of a correlation matrix, descending.
Eigen::VectorXd eigen_scree(const Eigen::MatrixXd& R);

enum class FactorCountRule {
    PaperElbow,  ///< position of the second-largest drop between eigenvalues
    Kaiser,      ///< count of eigenvalues > 1
    Fixed,
};

int choose_n_factors(const Eigen::VectorXd& eigenvalues, FactorCountRule rule, int fixed_k = 0);

enum class ExtractionMethod {
    PrincipalAxis,        ///< iterated-communality PAF
    PrincipalComponents,  ///< plain PC loadings V·sqrt(Λ)
};

struct ExtractionOptions {
    ExtractionMethod method = ExtractionMethod::PrincipalAxis;
    int max_iter = 100;
    double tol = 1e-6;  ///< on the communality change
};

/// Unrotated loadings (variables × k). PAF iterates communalities from a
/// squared-multiple-correlation start and throws carrying the last
/// residual if it fails to converge.
Eigen::MatrixXd extract_loadings(const Eigen::MatrixXd& R, int k,
                                 const ExtractionOptions& options = {});

struct VarimaxOptions {
    double tol = 1e-8;   ///< on the criterion change per sweep
    int max_sweeps = 1000;
    bool kaiser_normalize = true;
};

struct VarimaxResult {
    Eigen::MatrixXd loadings;
    Eigen::MatrixXd rotation;  ///< loadings = input · rotation
    double criterion = 0.0;    ///< on the Kaiser-normalized loadings
    std::vector<double> sweep_criteria;  ///< criterion after each sweep
};

/// Sum over factors of the variance of squared loadings (the raw varimax
/// objective, no row normalization applied here).
double varimax_criterion(const Eigen::MatrixXd& loadings);

/// Orthogonal varimax rotation via pairwise sweeps. The criterion is
/// non-decreasing across sweeps; communalities are invariant.
VarimaxResult varimax(const Eigen::MatrixXd& loadings, const VarimaxOptions& options = {});

struct FactorSummary {
    Eigen::VectorXd ss_loadings;
    Eigen::VectorXd pct_variance;  ///< ss / n_variables
    Eigen::VectorXd cumulative;    ///< running sum of pct
};

/// Per-factor variance table, factors ordered by descending ss. The input
/// loadings are assumed already in canonical order (see
/// canonicalize_factors); the summary just reports.
FactorSummary factor_summary(const Eigen::MatrixXd& loadings);

/// Orders factors by descending sum of squared loadings and flips each so
/// its largest-magnitude loading is positive. The rotation matrix (if
/// given) gets the same column permutation and signs.
void canonicalize_factors(Eigen::MatrixXd& loadings, Eigen::MatrixXd* rotation = nullptr);

/// Regression (Thurstone) factor scores: standardize X, then Z·R⁻¹·L.
/// Falls back to the eigenvalue pseudo-inverse when R is singular.
Eigen::MatrixXd factor_scores(const Eigen::MatrixXd& X, const Eigen::MatrixXd& loadings,
                              const Eigen::MatrixXd& R);

/// Per-condition means of factor scores (conditions in first-appearance
/// order of the row labels).
struct ConditionMeans {
    std::vector<std::string> conditions;
    Eigen::MatrixXd means;  ///< conditions × factors
};
ConditionMeans condition_factor_means(const Eigen::MatrixXd& scores,
                                      const std::vector<std::string>& condition_labels);

/// Tucker congruence between two loading columns.
double tucker_congruence(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Best sign/permutation alignment of `estimated` columns onto
/// `reference`, maximizing total absolute congruence.
struct FactorAlignment {
    std::vector<int> permutation;       ///< reference j matches estimated perm[j]
    std::vector<double> signs;          ///< applied to the estimated column
    std::vector<double> congruences;    ///< per reference factor, after alignment
};
FactorAlignment align_factors(const Eigen::MatrixXd& estimated, const Eigen::MatrixXd& reference);

struct AnalyzeOptions {
    FactorCountRule rule = FactorCountRule::PaperElbow;
    int fixed_k = 0;
    ExtractionOptions extraction;
    VarimaxOptions rotation;
};

/// Fitted factor model of an observation matrix, rotated and in canonical
/// factor order.
struct FactorModel {
    std::vector<std::string> pair_labels;
    Eigen::VectorXd eigenvalues;  ///< of R, descending (scree)
    int n_factors = 0;
    Eigen::MatrixXd loadings;     ///< variables × k, varimax-rotated
    Eigen::MatrixXd rotation;     ///< k × k orthogonal
    FactorSummary summary;
    Eigen::MatrixXd scores;       ///< observations × k
    ConditionMeans condition_means;
    double fit_residual = 0.0;    ///< max off-diagonal |R − LLᵀ|
};

/// Full pipeline: correlation, scree, factor count, extraction, varimax,
/// scores, per-condition means.
FactorModel analyze_observations(const ObservationMatrix& obs, const AnalyzeOptions& options);

}  // namespace gyrohap
