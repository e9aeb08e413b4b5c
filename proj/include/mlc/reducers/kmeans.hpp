#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mlc/core/rng.hpp"
#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

struct KmeansState {
    Eigen::MatrixXd centroids; // m x d
    int clusters = 0;
    std::uint64_t seed = 0;
    double inertia = 0.0;                 // final within-cluster sum of squares
    std::vector<int> train_assignment;    // final Lloyd assignment
    std::vector<double> inertia_history;  // per iteration, after each assignment
    int iterations = 0;
};

/// Nearest centroid per row; exact ties go to the lower cluster index.
inline std::vector<int> kmeans_assign(const KmeansState& state, const FeatureMatrix& x) {
    if (x.cols() != static_cast<int>(state.centroids.cols()))
        throw std::invalid_argument("kmeans_assign: dimension mismatch");
    const Eigen::VectorXd centroid_norms = state.centroids.rowwise().squaredNorm();
    std::vector<int> assignment(static_cast<std::size_t>(x.rows()));
    for (int i = 0; i < x.rows(); ++i) {
        const double row_norm = x.row_squared_norm(i);
        int best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int c = 0; c < state.clusters; ++c) {
            double dot = 0.0;
            for (const auto& e : x.row(i)) dot += e.value * state.centroids(c, e.index);
            const double dist = row_norm + centroid_norms(c) - 2.0 * dot;
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        assignment[static_cast<std::size_t>(i)] = best;
    }
    return assignment;
}

/// Lloyd's algorithm with k-means++ seeding. Stops when the largest centroid
/// displacement drops below tol or after max_iter rounds. An empty cluster is
/// reseeded to the point farthest from its previous centroid (points already
/// taken in the same round are skipped, ties to the lower row index).
inline KmeansState kmeans_fit(const FeatureMatrix& x, int m, std::uint64_t seed,
                              int max_iter = 100, double tol = 1e-6) {
    const int n = x.rows();
    const int d = x.cols();
    if (m < 1) throw std::invalid_argument("kmeans_fit: m must be >= 1");
    if (m > n) throw std::invalid_argument("kmeans_fit: m exceeds the number of rows");

    KmeansState state;
    state.clusters = m;
    state.seed = seed;
    state.centroids.resize(m, d);

    auto dense_row = [&](int i) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        for (const auto& e : x.row(i)) v(e.index) = e.value;
        return v;
    };

    // k-means++ initialization: first centroid uniform, the rest D^2-sampled
    {
        Rng rng(seed);
        std::vector<double> min_dist(static_cast<std::size_t>(n),
                                     std::numeric_limits<double>::infinity());
        const int first = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        state.centroids.row(0) = dense_row(first).transpose();
        for (int c = 1; c < m; ++c) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                const double dist =
                    x.row_squared_distance(i, Eigen::VectorXd(state.centroids.row(c - 1)));
                auto& slot = min_dist[static_cast<std::size_t>(i)];
                if (dist < slot) slot = dist;
                total += slot;
            }
            int pick = -1;
            if (total > 0.0) {
                const double r = rng.uniform_real() * total;
                double cumulative = 0.0;
                for (int i = 0; i < n; ++i) {
                    cumulative += min_dist[static_cast<std::size_t>(i)];
                    if (cumulative >= r) {
                        pick = i;
                        break;
                    }
                }
                if (pick < 0) pick = n - 1;
            } else {
                // remaining points coincide with chosen centroids; take the first
                // with nonzero slack, else the first row
                pick = 0;
                for (int i = 0; i < n; ++i)
                    if (min_dist[static_cast<std::size_t>(i)] > 0.0) {
                        pick = i;
                        break;
                    }
            }
            state.centroids.row(c) = dense_row(pick).transpose();
        }
    }

    std::vector<int> assignment(static_cast<std::size_t>(n), 0);
    double previous_inertia = std::numeric_limits<double>::infinity();
    int iteration = 0;
    for (; iteration < max_iter; ++iteration) {
        assignment = kmeans_assign(state, x);
        double inertia = 0.0;
        for (int i = 0; i < n; ++i)
            inertia += x.row_squared_distance(
                i, Eigen::VectorXd(state.centroids.row(assignment[static_cast<std::size_t>(i)])));
        assert(inertia <= previous_inertia * (1.0 + 1e-12) + 1e-12);
        previous_inertia = inertia;
        state.inertia_history.push_back(inertia);

        // centroid update
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(m, d);
        std::vector<int> counts(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < n; ++i) {
            const int c = assignment[static_cast<std::size_t>(i)];
            ++counts[static_cast<std::size_t>(c)];
            for (const auto& e : x.row(i)) sums(c, e.index) += e.value;
        }
        Eigen::MatrixXd updated(m, d);
        std::vector<char> reseeded(static_cast<std::size_t>(n), 0);
        for (int c = 0; c < m; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                updated.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            } else {
                int farthest = -1;
                double farthest_dist = -1.0;
                for (int i = 0; i < n; ++i) {
                    if (reseeded[static_cast<std::size_t>(i)]) continue;
                    const double dist =
                        x.row_squared_distance(i, Eigen::VectorXd(state.centroids.row(c)));
                    if (dist > farthest_dist) {
                        farthest_dist = dist;
                        farthest = i;
                    }
                }
                reseeded[static_cast<std::size_t>(farthest)] = 1;
                updated.row(c) = dense_row(farthest).transpose();
            }
        }
        const double movement = (updated - state.centroids).rowwise().norm().maxCoeff();
        state.centroids = updated;
        if (movement < tol) {
            ++iteration;
            break;
        }
    }

    state.iterations = iteration;
    state.train_assignment = kmeans_assign(state, x);
    double inertia = 0.0;
    for (int i = 0; i < n; ++i)
        inertia += x.row_squared_distance(
            i, Eigen::VectorXd(state.centroids.row(state.train_assignment[static_cast<std::size_t>(i)])));
    state.inertia = inertia;
    state.inertia_history.push_back(inertia);
    return state;
}

} // namespace mlc
