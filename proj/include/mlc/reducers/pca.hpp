#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include "mlc/core/sparse_matrix.hpp"
#include "mlc/linalg/truncated_svd.hpp"

namespace mlc {

struct PcaState {
    Eigen::VectorXd mean;             // d
    Eigen::MatrixXd components;       // d x k, orthonormal columns, variance-ordered
    Eigen::VectorXd singular_values;  // k, non-increasing
    double total_frobenius_sq = 0.0;  // ||centered training matrix||_F^2
    int sample_count = 0;

    int input_dim() const { return static_cast<int>(mean.size()); }
    int output_dim() const { return static_cast<int>(components.cols()); }

    Eigen::VectorXd explained_variance() const {
        const double denom = std::max(sample_count - 1, 1);
        return singular_values.array().square() / denom;
    }

    /// sigma_i^2 / ||B||_F^2; zero matrix yields zeros.
    Eigen::VectorXd explained_variance_ratio() const {
        if (total_frobenius_sq <= 0.0) return Eigen::VectorXd::Zero(singular_values.size());
        return singular_values.array().square() / total_frobenius_sq;
    }
};

/// PCA via SVD of the mean-centered matrix (not the covariance). Component
/// signs are fixed so each column's largest-magnitude entry is positive.
inline PcaState pca_fit(const FeatureMatrix& x, int k, const SvdOptions& options = {},
                        std::uint64_t seed = 0) {
    const int n = x.rows();
    const int d = x.cols();
    if (k < 1 || k > std::min(n, d)) throw std::invalid_argument("pca_fit: k out of range");

    PcaState state;
    state.mean = x.column_means();
    state.sample_count = n;
    TruncatedSvd svd = truncated_svd_centered(x, state.mean, k, options, seed);
    state.components = std::move(svd.right_vectors);
    state.singular_values = std::move(svd.singular_values);
    state.total_frobenius_sq = svd.total_frobenius_sq;
    return state;
}

/// (X - mean) * components, densely.
inline FeatureMatrix pca_transform(const PcaState& state, const FeatureMatrix& x) {
    if (x.cols() != state.input_dim())
        throw std::invalid_argument("pca_transform: dimension mismatch");
    Eigen::MatrixXd projected = x.multiply(state.components);
    projected.rowwise() -= (state.mean.transpose() * state.components).eval();
    return FeatureMatrix::from_dense(projected);
}

} // namespace mlc
