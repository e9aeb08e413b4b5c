#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mlc/core/rng.hpp"
#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

struct SvmParams {
    double c = 1.0;
    double tol = 1e-4;
    int max_sweeps = 1000;
};

struct SvmTrainResult {
    Eigen::VectorXd weights; // excludes the bias slot
    double bias = 0.0;
    int sweeps = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;                // minimization form
    std::vector<double> dual_objective_history; // one entry per sweep
};

/// Dual coordinate descent for the L2-regularized L2-loss (squared hinge)
/// linear SVM:
///
///   min_w  0.5*||w||^2 + C * sum_i max(0, 1 - y_i * (w . x~_i))^2
///
/// with x~ = [x, 1] so the bias rides along as a regularized weight. Each
/// coordinate step is the closed-form update with diagonal term
/// ||x~_i||^2 + 1/(2C); sweeps visit a fresh random permutation and stop when
/// the largest projected-gradient violation in a sweep drops below tol.
inline SvmTrainResult svm_dcd_fit(const FeatureMatrix& x, const std::vector<int>& y,
                                  const SvmParams& params, std::uint64_t seed) {
    const int n = x.rows();
    if (n < 1) throw std::invalid_argument("svm_dcd_fit: empty training set");
    if (static_cast<int>(y.size()) != n) throw std::invalid_argument("svm_dcd_fit: label count mismatch");
    if (params.c <= 0.0) throw std::invalid_argument("svm_dcd_fit: C must be positive");
    bool has_pos = false, has_neg = false;
    for (int v : y) {
        if (v == 1) has_pos = true;
        else if (v == -1) has_neg = true;
        else throw std::invalid_argument("svm_dcd_fit: labels must be +1/-1");
    }
    if (!has_pos || !has_neg) throw std::invalid_argument("svm_dcd_fit: both classes must be present");

    const int d = x.cols();
    const double diag_add = 1.0 / (2.0 * params.c);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    double bias = 0.0;
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd q_diag(n); // ||x~_i||^2 + 1/(2C)
    for (int i = 0; i < n; ++i) q_diag(i) = x.row_squared_norm(i) + 1.0 + diag_add;

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);

    SvmTrainResult result;
    auto dual_objective = [&]() {
        // 0.5*alpha^T (Q + D) alpha - e^T alpha, using w = sum alpha_i y_i x~_i
        return 0.5 * (w.squaredNorm() + bias * bias) + 0.25 / params.c * alpha.squaredNorm() -
               alpha.sum();
    };

    int sweep = 0;
    for (; sweep < params.max_sweeps; ++sweep) {
        rng.shuffle(order);
        double max_violation = 0.0;
        for (int idx : order) {
            const double yi = static_cast<double>(y[static_cast<std::size_t>(idx)]);
            const double margin = yi * (x.row_dot(idx, w) + bias);
            const double g = margin - 1.0 + alpha(idx) * diag_add;
            const double pg = (alpha(idx) == 0.0) ? std::min(g, 0.0) : g;
            max_violation = std::max(max_violation, std::abs(pg));
            if (pg != 0.0) {
                const double old = alpha(idx);
                alpha(idx) = std::max(old - g / q_diag(idx), 0.0);
                const double step = (alpha(idx) - old) * yi;
                if (step != 0.0) {
                    for (const auto& e : x.row(idx)) w(e.index) += step * e.value;
                    bias += step;
                }
            }
        }
        result.dual_objective_history.push_back(dual_objective());
        if (max_violation < params.tol) {
            ++sweep;
            break;
        }
    }

    double hinge = 0.0;
    for (int i = 0; i < n; ++i) {
        const double margin = static_cast<double>(y[static_cast<std::size_t>(i)]) * (x.row_dot(i, w) + bias);
        const double slack = std::max(0.0, 1.0 - margin);
        hinge += slack * slack;
    }

    result.weights = std::move(w);
    result.bias = bias;
    result.sweeps = sweep;
    result.primal_objective =
        0.5 * (result.weights.squaredNorm() + bias * bias) + params.c * hinge;
    result.dual_objective = result.dual_objective_history.empty()
                                ? 0.0
                                : result.dual_objective_history.back();
    return result;
}

} // namespace mlc
