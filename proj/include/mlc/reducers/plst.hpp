#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include "mlc/linalg/truncated_svd.hpp"
#include "mlc/problem.hpp"

namespace mlc {

/// Principal-label-space transformation state: the label matrix is centered
/// and projected onto the top-k right singular vectors; the child problem
/// regresses onto those k real-valued coordinates.
struct PlstState {
    Eigen::VectorXd label_mean;      // L
    Eigen::MatrixXd basis;           // L x k, orthonormal columns
    Eigen::VectorXd singular_values; // k

    int input_labels() const { return static_cast<int>(label_mean.size()); }
    int reduced_dim() const { return static_cast<int>(basis.cols()); }
};

namespace detail {

inline FeatureMatrix targets_as_sparse(const Targets& targets) {
    if (!targets.is_binary()) return FeatureMatrix::from_dense(targets.reals());
    const LabelMatrix& y = targets.labels();
    std::vector<SparseRow> rows(static_cast<std::size_t>(y.rows()));
    for (int i = 0; i < y.rows(); ++i)
        for (int label : y.row(i)) rows[static_cast<std::size_t>(i)].push_back({label, 1.0});
    return FeatureMatrix(std::move(rows), y.cols());
}

} // namespace detail

inline PlstState plst_fit(const Targets& targets, int k, const SvdOptions& options = {},
                          std::uint64_t seed = 0) {
    const int n = targets.rows();
    const int num_labels = targets.cols();
    if (k < 1 || k > std::min(n, num_labels))
        throw std::invalid_argument("plst_fit: k out of range");

    const FeatureMatrix as_matrix = detail::targets_as_sparse(targets);
    PlstState state;
    state.label_mean = as_matrix.column_means();
    TruncatedSvd svd = truncated_svd_centered(as_matrix, state.label_mean, k, options, seed);
    state.basis = std::move(svd.right_vectors);
    state.singular_values = std::move(svd.singular_values);
    return state;
}

/// Child-problem targets: Z = (Y - mean) * basis.
inline Eigen::MatrixXd plst_encode(const PlstState& state, const Targets& targets) {
    if (targets.cols() != state.input_labels())
        throw std::invalid_argument("plst_encode: dimension mismatch");
    const FeatureMatrix as_matrix = detail::targets_as_sparse(targets);
    Eigen::MatrixXd z = as_matrix.multiply(state.basis);
    z.rowwise() -= (state.label_mean.transpose() * state.basis).eval();
    return z;
}

/// Score decode: Y^ = Z^ * basis^T + mean, clamped to [0,1].
inline Eigen::MatrixXd plst_decode(const PlstState& state, const Eigen::MatrixXd& zhat) {
    if (static_cast<int>(zhat.cols()) != state.reduced_dim())
        throw std::invalid_argument("plst_decode: dimension mismatch");
    Eigen::MatrixXd decoded = zhat * state.basis.transpose();
    decoded.rowwise() += state.label_mean.transpose();
    return decoded.cwiseMax(0.0).cwiseMin(1.0);
}

} // namespace mlc
