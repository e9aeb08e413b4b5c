#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mlc/core/label_matrix.hpp"

namespace mlc {

using ScoreMatrix = Eigen::MatrixXd;

/// Scut: P[i,j] = 1 iff S[i,j] >= t.
inline PredictionMatrix apply_scut(const ScoreMatrix& scores, double threshold) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i)
        for (Eigen::Index j = 0; j < scores.cols(); ++j)
            if (scores(i, j) >= threshold) rows[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
    return PredictionMatrix(std::move(rows), static_cast<int>(scores.cols()));
}

/// Scut with one threshold per label.
inline PredictionMatrix apply_scut(const ScoreMatrix& scores, const std::vector<double>& thresholds) {
    if (static_cast<int>(thresholds.size()) != scores.cols())
        throw std::invalid_argument("apply_scut: threshold count must equal the label count");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i)
        for (Eigen::Index j = 0; j < scores.cols(); ++j)
            if (scores(i, j) >= thresholds[static_cast<std::size_t>(j)])
                rows[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
    return PredictionMatrix(std::move(rows), static_cast<int>(scores.cols()));
}

/// Per-label threshold from {0.05, 0.10, ..., 0.95} maximizing that label's F1
/// on the given scores; ties pick the smaller threshold. F1 with no positives
/// and no predictions counts as 1.
inline std::vector<double> tune_scut(const ScoreMatrix& scores, const LabelMatrix& truth) {
    if (scores.rows() != truth.rows() || static_cast<int>(scores.cols()) != truth.cols())
        throw std::invalid_argument("tune_scut: shape mismatch");
    const int num_labels = truth.cols();
    std::vector<double> thresholds(static_cast<std::size_t>(num_labels), 0.5);
    for (int j = 0; j < num_labels; ++j) {
        double best_f1 = -1.0;
        double best_t = 0.05;
        for (int step = 1; step <= 19; ++step) {
            const double t = step / 20.0;
            long long tp = 0, fp = 0, fn = 0;
            for (int i = 0; i < truth.rows(); ++i) {
                const bool predicted = scores(i, j) >= t;
                const bool actual = truth.contains(i, j);
                if (predicted && actual) ++tp;
                else if (predicted) ++fp;
                else if (actual) ++fn;
            }
            const double f1 = (2 * tp + fp + fn) == 0
                                  ? 1.0
                                  : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
            if (f1 > best_f1) {
                best_f1 = f1;
                best_t = t;
            }
        }
        thresholds[static_cast<std::size_t>(j)] = best_t;
    }
    return thresholds;
}

/// Rcut: per row, exactly the k highest-scoring labels; ties at the cut go to
/// the lower label index.
inline PredictionMatrix apply_rcut(const ScoreMatrix& scores, int k) {
    const int num_labels = static_cast<int>(scores.cols());
    if (k < 1 || k > num_labels) throw std::invalid_argument("apply_rcut: k out of range");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(scores.rows()));
    std::vector<int> order(static_cast<std::size_t>(num_labels));
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
            if (scores(i, a) != scores(i, b)) return scores(i, a) > scores(i, b);
            return a < b;
        });
        auto& row = rows[static_cast<std::size_t>(i)];
        row.assign(order.begin(), order.begin() + k);
        std::sort(row.begin(), row.end());
    }
    return PredictionMatrix(std::move(rows), num_labels);
}

/// Pcut: per label j, the ceil(prior_j * n) highest-scoring rows are positive;
/// ties at the cut go to the lower row index.
inline PredictionMatrix apply_pcut(const ScoreMatrix& scores, const Eigen::VectorXd& priors) {
    const int n = static_cast<int>(scores.rows());
    const int num_labels = static_cast<int>(scores.cols());
    if (static_cast<int>(priors.size()) != num_labels)
        throw std::invalid_argument("apply_pcut: prior count must equal the label count");
    for (int j = 0; j < num_labels; ++j)
        if (priors(j) < 0.0 || priors(j) > 1.0)
            throw std::invalid_argument("apply_pcut: priors must lie in [0,1]");

    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int j = 0; j < num_labels; ++j) {
        const int quota = std::min(n, static_cast<int>(std::ceil(priors(j) * n)));
        if (quota == 0) continue;
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + quota, order.end(), [&](int a, int b) {
            if (scores(a, j) != scores(b, j)) return scores(a, j) > scores(b, j);
            return a < b;
        });
        for (int t = 0; t < quota; ++t) rows[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])].push_back(j);
    }
    return PredictionMatrix(std::move(rows), num_labels);
}

} // namespace mlc
