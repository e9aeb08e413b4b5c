#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mlc/core/rng.hpp"
#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

struct SvdOptions {
    // problems with min(n, dim) at or below this are densified and solved
    // exactly; larger ones use matrix-free subspace iteration
    int densify_threshold = 4096;
    int max_iterations = 500;
    double tol = 1e-12;
    int oversample = 7;
};

struct TruncatedSvd {
    Eigen::VectorXd singular_values; // k, non-increasing
    Eigen::MatrixXd right_vectors;   // dim x k, orthonormal columns
    double total_frobenius_sq = 0.0; // ||centered matrix||_F^2
};

namespace detail {

/// Fixes each column's sign so its largest-magnitude entry (first on ties) is
/// positive. Makes factorization output deterministic.
inline void sign_fix_columns(Eigen::MatrixXd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index best = 0;
        double best_abs = std::abs(m(0, j));
        for (Eigen::Index i = 1; i < m.rows(); ++i) {
            const double a = std::abs(m(i, j));
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (m(best, j) < 0.0) m.col(j) = -m.col(j);
    }
}

inline Eigen::MatrixXd thin_orthonormal(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return q;
}

} // namespace detail

/// Top-k singular values and right singular vectors of (M - 1*mean^T).
inline TruncatedSvd truncated_svd_centered(const FeatureMatrix& m, const Eigen::VectorXd& mean,
                                           int k, const SvdOptions& options = {},
                                           std::uint64_t seed = 0) {
    const int n = m.rows();
    const int dim = m.cols();
    if (mean.size() != dim) throw std::invalid_argument("truncated_svd_centered: mean size mismatch");
    if (k < 1 || k > std::min(n, dim))
        throw std::invalid_argument("truncated_svd_centered: k out of range");

    TruncatedSvd out;
    // sum_i ||x_i - mean||^2 == ||M||_F^2 - n*||mean||^2 when mean is the column mean;
    // compute directly against the given mean to stay exact for any center.
    {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += m.row_squared_distance(i, mean);
        out.total_frobenius_sq = total;
    }

    if (std::min(n, dim) <= options.densify_threshold) {
        Eigen::MatrixXd centered = m.to_dense();
        centered.rowwise() -= mean.transpose();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
        out.singular_values = svd.singularValues().head(k);
        out.right_vectors = svd.matrixV().leftCols(k);
        detail::sign_fix_columns(out.right_vectors);
        return out;
    }

    // Matrix-free subspace iteration on B^T B where B = M - 1*mean^T.
    const int q = std::min(k + options.oversample, std::min(n, dim));
    auto mul_b = [&](const Eigen::MatrixXd& v) { // B * v
        Eigen::MatrixXd w = m.multiply(v);
        w.rowwise() -= (mean.transpose() * v).eval();
        return w;
    };
    auto mul_bt = [&](const Eigen::MatrixXd& w) { // B^T * w
        Eigen::MatrixXd t = m.transpose_multiply(w);
        t.noalias() -= mean * w.colwise().sum();
        return t;
    };

    Rng rng(derive_seed(seed, seed_tag::svd_init));
    Eigen::MatrixXd v(dim, q);
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < dim; ++i) v(i, j) = rng.uniform_real(-1.0, 1.0);
    v = detail::thin_orthonormal(v);

    Eigen::VectorXd prev_ritz;
    for (int it = 0; it < options.max_iterations; ++it) {
        Eigen::MatrixXd w = mul_b(v);
        Eigen::MatrixXd gram = w.transpose() * w; // q x q
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        Eigen::VectorXd ritz = es.eigenvalues().reverse(); // descending
        if (prev_ritz.size() == ritz.size()) {
            const double scale = std::max(ritz(0), 1e-300);
            double change = 0.0;
            for (int j = 0; j < k; ++j) change = std::max(change, std::abs(ritz(j) - prev_ritz(j)));
            if (change <= options.tol * scale) {
                v = v * es.eigenvectors().rowwise().reverse();
                Eigen::VectorXd sigma(k);
                for (int j = 0; j < k; ++j) sigma(j) = std::sqrt(std::max(ritz(j), 0.0));
                out.singular_values = sigma;
                out.right_vectors = v.leftCols(k);
                detail::sign_fix_columns(out.right_vectors);
                return out;
            }
        }
        prev_ritz = ritz;
        v = detail::thin_orthonormal(mul_bt(w));
    }

    // Iteration cap hit: return the current Ritz approximation.
    Eigen::MatrixXd w = mul_b(v);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.transpose() * w);
    Eigen::VectorXd ritz = es.eigenvalues().reverse();
    v = v * es.eigenvectors().rowwise().reverse();
    Eigen::VectorXd sigma(k);
    for (int j = 0; j < k; ++j) sigma(j) = std::sqrt(std::max(ritz(j), 0.0));
    out.singular_values = sigma;
    out.right_vectors = v.leftCols(k);
    detail::sign_fix_columns(out.right_vectors);
    return out;
}

} // namespace mlc
