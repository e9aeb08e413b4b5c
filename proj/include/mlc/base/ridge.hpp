#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

/// Multi-target linear model; for binary use the calibrated score is the
/// prediction clamped to [0,1].
struct RidgeModel {
    Eigen::MatrixXd weights;  // dim x targets
    Eigen::RowVectorXd bias;  // 1 x targets

    Eigen::MatrixXd predict(const FeatureMatrix& x) const {
        Eigen::MatrixXd out = x.multiply(weights);
        out.rowwise() += bias;
        return out;
    }
};

/// Normal-equation ridge with an appended, unregularized bias column:
/// solves (X~^T X~ + lambda*I~) w~ = X~^T y per target, I~ zero in the bias
/// slot. lambda = 0 on a singular system falls back to the minimum-norm
/// least-squares solution (complete orthogonal decomposition). fit_bias=false
/// drops the bias column entirely.
inline RidgeModel ridge_fit(const FeatureMatrix& x, const Eigen::MatrixXd& targets, double lambda,
                            bool fit_bias = true) {
    if (x.rows() < 1) throw std::invalid_argument("ridge_fit: empty training set");
    if (targets.rows() != x.rows()) throw std::invalid_argument("ridge_fit: target row count mismatch");
    if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda must be >= 0");

    const int n = x.rows();
    const int d = x.cols();
    const int t = static_cast<int>(targets.cols());
    const int cols = d + (fit_bias ? 1 : 0);

    Eigen::MatrixXd augmented(n, cols);
    augmented.leftCols(d) = x.to_dense();
    if (fit_bias) augmented.col(d).setOnes();

    Eigen::MatrixXd solution(cols, t);
    bool solved = false;
    if (lambda > 0.0) {
        Eigen::MatrixXd gram = augmented.transpose() * augmented;
        for (int j = 0; j < d; ++j) gram(j, j) += lambda; // bias slot unregularized
        const Eigen::MatrixXd rhs = augmented.transpose() * targets;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        solution = ldlt.solve(rhs);
        // accept only if the normal equations are actually satisfied
        const double residual = (gram * solution - rhs).cwiseAbs().maxCoeff();
        const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
        solved = ldlt.info() == Eigen::Success && residual <= 1e-10 * scale;
        if (!solved) {
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
            solution = cod.solve(rhs);
            solved = true;
        }
    }
    if (!solved) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(augmented);
        solution = cod.solve(targets);
    }

    RidgeModel model;
    model.weights = solution.topRows(d);
    if (fit_bias)
        model.bias = solution.row(d);
    else
        model.bias = Eigen::RowVectorXd::Zero(t);
    return model;
}

} // namespace mlc
