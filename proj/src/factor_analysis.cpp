#include "gyrohap/factor_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gyrohap/errors.hpp"

namespace gyrohap {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Column means and sample standard deviations (n−1 denominator).
void column_moments(const MatrixXd& X, VectorXd& mean, VectorXd& sd) {
    const double n = static_cast<double>(X.rows());
    mean = X.colwise().mean().transpose();
    MatrixXd centered = X.rowwise() - mean.transpose();
    sd = (centered.array().square().colwise().sum() / (n - 1.0)).sqrt().matrix().transpose();
}

/// Eigendecomposition sorted descending.
void eigen_descending(const MatrixXd& S, VectorXd& values, MatrixXd& vectors) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(S);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition failed");
    }
    const Index p = S.rows();
    values.resize(p);
    vectors.resize(p, p);
    for (Index i = 0; i < p; ++i) {
        values[i] = solver.eigenvalues()[p - 1 - i];
        vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
    }
}

/// Loadings of the top-k components of S: V_k · sqrt(max(λ_k, 0)).
MatrixXd top_k_loadings(const MatrixXd& S, int k) {
    VectorXd values;
    MatrixXd vectors;
    eigen_descending(S, values, vectors);
    MatrixXd L(S.rows(), k);
    for (int j = 0; j < k; ++j) {
        const double lambda = std::max(values[j], 0.0);
        L.col(j) = vectors.col(j) * std::sqrt(lambda);
    }
    return L;
}

/// Squared multiple correlations, the stock communality start. Falls back
/// to the largest absolute off-diagonal correlation per row when R is
/// numerically singular.
VectorXd initial_communalities(const MatrixXd& R) {
    const Index p = R.rows();
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(R);
    if (solver.info() == Eigen::Success && solver.eigenvalues().minCoeff() > 1e-10) {
        const VectorXd inv_ev = solver.eigenvalues().cwiseInverse();
        const MatrixXd R_inv =
            solver.eigenvectors() * inv_ev.asDiagonal() * solver.eigenvectors().transpose();
        VectorXd h(p);
        for (Index i = 0; i < p; ++i) {
            h[i] = 1.0 - 1.0 / R_inv(i, i);
        }
        return h;
    }
    VectorXd h(p);
    for (Index i = 0; i < p; ++i) {
        double best = 0.0;
        for (Index j = 0; j < p; ++j) {
            if (i != j) {
                best = std::max(best, std::abs(R(i, j)));
            }
        }
        h[i] = best;
    }
    return h;
}

}  // namespace

Eigen::MatrixXd correlation_matrix(const ObservationMatrix& obs) {
    return correlation_matrix(obs.values, obs.pair_labels);
}

Eigen::MatrixXd correlation_matrix(const MatrixXd& X, const std::vector<std::string>& labels) {
    const Index n = X.rows();
    const Index p = X.cols();
    if (n < 2) {
        throw NumericalError("correlation_matrix: need at least 2 observations");
    }

    VectorXd mean, sd;
    column_moments(X, mean, sd);
    for (Index j = 0; j < p; ++j) {
        if (!(sd[j] > 0.0)) {
            const std::string name =
                j < static_cast<Index>(labels.size()) ? labels[j] : std::to_string(j);
            throw NumericalError("correlation_matrix: column '" + name +
                                 "' is constant (zero variance)");
        }
    }

    MatrixXd Z = (X.rowwise() - mean.transpose()).array().rowwise() / sd.transpose().array();
    MatrixXd R = Z.transpose() * Z / static_cast<double>(n - 1);
    // enforce exact symmetry and unit diagonal against rounding
    R = ((R + R.transpose()) / 2.0).eval();
    R.diagonal().setOnes();
    return R;
}

Eigen::VectorXd eigen_scree(const MatrixXd& R) {
    if (R.rows() != R.cols()) {
        throw std::invalid_argument("eigen_scree: matrix must be square");
    }
    if ((R - R.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("eigen_scree: matrix must be symmetric");
    }
    VectorXd values;
    MatrixXd vectors;
    eigen_descending(R, values, vectors);
    return values;
}

int choose_n_factors(const VectorXd& eigenvalues, FactorCountRule rule, int fixed_k) {
    const Index n = eigenvalues.size();
    switch (rule) {
        case FactorCountRule::Fixed:
            if (fixed_k < 1 || fixed_k > n) {
                throw std::invalid_argument("choose_n_factors: fixed k out of range");
            }
            return fixed_k;
        case FactorCountRule::Kaiser: {
            int count = 0;
            for (Index i = 0; i < n; ++i) {
                if (eigenvalues[i] > 1.0) {
                    ++count;
                }
            }
            return std::max(count, 1);
        }
        case FactorCountRule::PaperElbow: {
            if (n < 3) {
                throw std::invalid_argument("choose_n_factors: elbow rule needs >= 3 eigenvalues");
            }
            // drops between consecutive eigenvalues; factor count is the
            // 1-based position of the second-largest drop
            std::vector<std::pair<double, int>> drops;
            for (Index i = 0; i + 1 < n; ++i) {
                drops.emplace_back(eigenvalues[i] - eigenvalues[i + 1], static_cast<int>(i) + 1);
            }
            std::stable_sort(drops.begin(), drops.end(), [](const auto& a, const auto& b) {
                return a.first > b.first;
            });
            return drops.size() >= 2 ? drops[1].second : drops[0].second;
        }
    }
    throw std::invalid_argument("choose_n_factors: unknown rule");
}

Eigen::MatrixXd extract_loadings(const MatrixXd& R, int k, const ExtractionOptions& options) {
    const Index p = R.rows();
    if (k < 1 || k > p) {
        throw std::invalid_argument("extract_loadings: k out of range");
    }

    if (options.method == ExtractionMethod::PrincipalComponents) {
        return top_k_loadings(R, k);
    }

    // principal-axis factoring with iterated communalities
    VectorXd h = initial_communalities(R).cwiseMax(0.0).cwiseMin(1.0);
    MatrixXd L;
    double change = 0.0;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        MatrixXd reduced = R;
        reduced.diagonal() = h;
        L = top_k_loadings(reduced, k);
        VectorXd h_new = L.array().square().rowwise().sum().min(1.0).max(0.0).matrix();
        change = (h_new - h).cwiseAbs().maxCoeff();
        h = h_new;
        if (change < options.tol) {
            return L;
        }
    }
    throw NumericalError("extract_loadings: communalities did not converge in " +
                         std::to_string(options.max_iter) +
                         " iterations (last change " + std::to_string(change) + ")");
}

double varimax_criterion(const MatrixXd& loadings) {
    const double p = static_cast<double>(loadings.rows());
    double criterion = 0.0;
    for (Index j = 0; j < loadings.cols(); ++j) {
        const auto sq = loadings.col(j).array().square();
        const double mean_sq = sq.mean();
        criterion += (sq - mean_sq).square().sum() / p;
    }
    return criterion;
}

VarimaxResult varimax(const MatrixXd& loadings, const VarimaxOptions& options) {
    const Index p = loadings.rows();
    const Index k = loadings.cols();
    if (k < 2) {
        throw std::invalid_argument("varimax: need at least 2 factors");
    }

    // Kaiser normalization: rotate rows scaled to unit communality
    VectorXd row_norm = loadings.array().square().rowwise().sum().sqrt().matrix();
    VectorXd scale = row_norm.unaryExpr([](double v) { return v > 0.0 ? v : 1.0; });
    MatrixXd W = options.kaiser_normalize
                     ? MatrixXd(loadings.array().colwise() / scale.array())
                     : loadings;

    VarimaxResult result;
    result.rotation = MatrixXd::Identity(k, k);

    double prev = varimax_criterion(W);
    const double n = static_cast<double>(p);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        for (Index a = 0; a + 1 < k; ++a) {
            for (Index b = a + 1; b < k; ++b) {
                const VectorXd x = W.col(a);
                const VectorXd y = W.col(b);
                const VectorXd u = x.array().square() - y.array().square();
                const VectorXd v = 2.0 * x.array() * y.array();
                const double A = u.sum();
                const double B = v.sum();
                const double C = (u.array().square() - v.array().square()).sum();
                const double D = 2.0 * u.dot(v);
                const double num = D - 2.0 * A * B / n;
                const double den = C - (A * A - B * B) / n;
                const double angle = 0.25 * std::atan2(num, den);
                if (std::abs(angle) < 1e-14) {
                    continue;
                }
                const double c = std::cos(angle);
                const double s = std::sin(angle);
                W.col(a) = c * x + s * y;
                W.col(b) = -s * x + c * y;
                const VectorXd ra = result.rotation.col(a);
                const VectorXd rb = result.rotation.col(b);
                result.rotation.col(a) = c * ra + s * rb;
                result.rotation.col(b) = -s * ra + c * rb;
            }
        }
        const double criterion = varimax_criterion(W);
        result.sweep_criteria.push_back(criterion);
        if (criterion - prev < options.tol) {
            prev = criterion;
            break;
        }
        prev = criterion;
        if (sweep + 1 == options.max_sweeps) {
            throw NumericalError("varimax: no convergence in " +
                                 std::to_string(options.max_sweeps) +
                                 " sweeps (criterion " + std::to_string(criterion) + ")");
        }
    }

    result.criterion = prev;
    result.loadings = options.kaiser_normalize
                          ? MatrixXd(W.array().colwise() * scale.array())
                          : W;
    return result;
}

FactorSummary factor_summary(const MatrixXd& loadings) {
    const double p = static_cast<double>(loadings.rows());
    const Index k = loadings.cols();

    FactorSummary summary;
    summary.ss_loadings = loadings.array().square().colwise().sum().matrix().transpose();

    // report in descending-ss order
    std::vector<Index> order(k);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return summary.ss_loadings[a] > summary.ss_loadings[b];
    });
    VectorXd ss(k);
    for (Index j = 0; j < k; ++j) {
        ss[j] = summary.ss_loadings[order[static_cast<size_t>(j)]];
    }
    summary.ss_loadings = ss;
    summary.pct_variance = summary.ss_loadings / p;
    summary.cumulative.resize(k);
    double running = 0.0;
    for (Index j = 0; j < k; ++j) {
        running += summary.pct_variance[j];
        summary.cumulative[j] = running;
    }
    return summary;
}

void canonicalize_factors(MatrixXd& loadings, MatrixXd* rotation) {
    const Index k = loadings.cols();
    VectorXd ss = loadings.array().square().colwise().sum().matrix().transpose();

    std::vector<Index> order(k);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return ss[a] > ss[b]; });

    MatrixXd L(loadings.rows(), k);
    MatrixXd R;
    if (rotation != nullptr) {
        R.resize(rotation->rows(), k);
    }
    for (Index j = 0; j < k; ++j) {
        VectorXd col = loadings.col(order[static_cast<size_t>(j)]);
        Index imax = 0;
        col.cwiseAbs().maxCoeff(&imax);
        const double sign = col[imax] < 0.0 ? -1.0 : 1.0;
        L.col(j) = sign * col;
        if (rotation != nullptr) {
            R.col(j) = sign * rotation->col(order[static_cast<size_t>(j)]);
        }
    }
    loadings = L;
    if (rotation != nullptr) {
        *rotation = R;
    }
}

Eigen::MatrixXd factor_scores(const MatrixXd& X, const MatrixXd& loadings, const MatrixXd& R) {
    if (X.cols() != loadings.rows() || R.rows() != loadings.rows() || R.rows() != R.cols()) {
        throw std::invalid_argument("factor_scores: inconsistent shapes");
    }

    VectorXd mean, sd;
    column_moments(X, mean, sd);
    for (Index j = 0; j < sd.size(); ++j) {
        if (!(sd[j] > 0.0)) {
            throw NumericalError("factor_scores: constant column " + std::to_string(j));
        }
    }
    MatrixXd Z = (X.rowwise() - mean.transpose()).array().rowwise() / sd.transpose().array();

    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(R);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("factor_scores: eigendecomposition of R failed");
    }
    // R⁻¹·L via the spectral decomposition; near-null directions are
    // dropped (pseudo-inverse) so exactly-collinear variables still score.
    const VectorXd& ev = solver.eigenvalues();
    const double cutoff = 1e-12 * std::max(1.0, ev.maxCoeff());
    VectorXd inv = ev.unaryExpr([&](double v) { return v > cutoff ? 1.0 / v : 0.0; });
    MatrixXd weights = solver.eigenvectors() * inv.asDiagonal() *
                       solver.eigenvectors().transpose() * loadings;
    return Z * weights;
}

ConditionMeans condition_factor_means(const MatrixXd& scores,
                                      const std::vector<std::string>& condition_labels) {
    if (static_cast<Index>(condition_labels.size()) != scores.rows()) {
        throw std::invalid_argument("condition_factor_means: one label per score row required");
    }

    ConditionMeans out;
    for (const std::string& label : condition_labels) {
        if (std::find(out.conditions.begin(), out.conditions.end(), label) ==
            out.conditions.end()) {
            out.conditions.push_back(label);
        }
    }

    out.means = MatrixXd::Zero(static_cast<Index>(out.conditions.size()), scores.cols());
    VectorXd counts = VectorXd::Zero(static_cast<Index>(out.conditions.size()));
    for (Index r = 0; r < scores.rows(); ++r) {
        const auto it = std::find(out.conditions.begin(), out.conditions.end(),
                                  condition_labels[static_cast<size_t>(r)]);
        const Index c = static_cast<Index>(it - out.conditions.begin());
        out.means.row(c) += scores.row(r);
        counts[c] += 1.0;
    }
    out.means.array().colwise() /= counts.array();
    return out;
}

double tucker_congruence(const VectorXd& a, const VectorXd& b) {
    const double denom = std::sqrt(a.squaredNorm() * b.squaredNorm());
    if (!(denom > 0.0)) {
        return 0.0;
    }
    return a.dot(b) / denom;
}

FactorAlignment align_factors(const MatrixXd& estimated, const MatrixXd& reference) {
    if (estimated.rows() != reference.rows() || estimated.cols() != reference.cols()) {
        throw std::invalid_argument("align_factors: shape mismatch");
    }
    const int k = static_cast<int>(reference.cols());

    MatrixXd congruence(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            congruence(i, j) = tucker_congruence(reference.col(i), estimated.col(j));
        }
    }

    // exhaustive assignment; factor counts here are tiny
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_total = -1.0;
    do {
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            total += std::abs(congruence(i, perm[static_cast<size_t>(i)]));
        }
        if (total > best_total) {
            best_total = total;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    FactorAlignment alignment;
    alignment.permutation = best;
    for (int i = 0; i < k; ++i) {
        const double c = congruence(i, best[static_cast<size_t>(i)]);
        alignment.signs.push_back(c < 0.0 ? -1.0 : 1.0);
        alignment.congruences.push_back(std::abs(c));
    }
    return alignment;
}

FactorModel analyze_observations(const ObservationMatrix& obs, const AnalyzeOptions& options) {
    FactorModel model;
    model.pair_labels = obs.pair_labels;

    const MatrixXd R = correlation_matrix(obs);
    model.eigenvalues = eigen_scree(R);
    model.n_factors = choose_n_factors(model.eigenvalues, options.rule, options.fixed_k);

    MatrixXd L = extract_loadings(R, model.n_factors, options.extraction);
    if (model.n_factors >= 2) {
        VarimaxResult rotated = varimax(L, options.rotation);
        model.loadings = rotated.loadings;
        model.rotation = rotated.rotation;
    } else {
        model.loadings = L;
        model.rotation = MatrixXd::Identity(1, 1);
    }
    canonicalize_factors(model.loadings, &model.rotation);

    model.summary = factor_summary(model.loadings);
    model.fit_residual = 0.0;
    const MatrixXd fitted = model.loadings * model.loadings.transpose();
    for (Index i = 0; i < R.rows(); ++i) {
        for (Index j = 0; j < R.cols(); ++j) {
            if (i != j) {
                model.fit_residual = std::max(model.fit_residual, std::abs(R(i, j) - fitted(i, j)));
            }
        }
    }

    model.scores = factor_scores(obs.values, model.loadings, R);
    model.condition_means = condition_factor_means(model.scores, obs.row_condition);
    return model;
}

}  // namespace gyrohap
