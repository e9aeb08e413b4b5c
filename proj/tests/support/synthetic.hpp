#pragma once

// Seeded synthetic data builders shared by the unit and acceptance suites.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mlc/core/rng.hpp"
#include "mlc/dataset.hpp"

namespace synthetic {

/// Random dense feature matrix with entries uniform in [lo, hi].
inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed, double lo = -1.0,
                                     double hi = 1.0) {
    mlc::Rng rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform_real(lo, hi);
    return m;
}

/// Random binary label matrix with the given positive rate.
inline mlc::LabelMatrix random_labels(int rows, int num_labels, std::uint64_t seed,
                                      double positive_rate = 0.35) {
    mlc::Rng rng(seed);
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < num_labels; ++j)
            if (rng.uniform_real() < positive_rate) sets[static_cast<std::size_t>(i)].push_back(j);
    return mlc::LabelMatrix(std::move(sets), num_labels);
}

/// Features uniform in [-1,1]^d; label j relevant iff w_j . x > 0 where each
/// w_j is a fixed random unit hyperplane; points with |w_j . x| < margin for
/// any j are rejected, so every label is linearly separable with the given
/// margin.
inline mlc::Dataset margin_hyperplane_dataset(int n, int d, int num_labels, double margin,
                                              std::uint64_t seed) {
    mlc::Rng rng(seed);
    std::vector<Eigen::VectorXd> hyperplanes;
    for (int j = 0; j < num_labels; ++j) {
        Eigen::VectorXd w(d);
        for (int t = 0; t < d; ++t) w(t) = rng.uniform_real(-1.0, 1.0);
        hyperplanes.push_back(w.normalized());
    }

    std::vector<mlc::SparseRow> feature_rows;
    std::vector<std::vector<int>> label_rows;
    while (static_cast<int>(feature_rows.size()) < n) {
        Eigen::VectorXd x(d);
        for (int t = 0; t < d; ++t) x(t) = rng.uniform_real(-1.0, 1.0);
        bool ok = true;
        std::vector<int> labels;
        for (int j = 0; j < num_labels; ++j) {
            const double value = hyperplanes[static_cast<std::size_t>(j)].dot(x);
            if (std::abs(value) < margin) {
                ok = false;
                break;
            }
            if (value > 0.0) labels.push_back(j);
        }
        if (!ok) continue;
        mlc::SparseRow row;
        for (int t = 0; t < d; ++t) row.push_back({t, x(t)});
        feature_rows.push_back(std::move(row));
        label_rows.push_back(std::move(labels));
    }
    return mlc::Dataset(mlc::FeatureMatrix(std::move(feature_rows), d),
                        mlc::LabelMatrix(std::move(label_rows), num_labels), "synthetic-margin");
}

} // namespace synthetic
