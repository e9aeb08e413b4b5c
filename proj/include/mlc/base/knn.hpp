#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mlc/base/scorer.hpp"
#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

/// Brute-force kNN score: fraction of positives among the k nearest training
/// rows (Euclidean). Distance ties resolve to the lower training-row index.
inline Eigen::VectorXd knn_score(const FeatureMatrix& train, const std::vector<std::uint8_t>& y,
                                 int k, const FeatureMatrix& test) {
    const int n = train.rows();
    if (static_cast<int>(y.size()) != n) throw std::invalid_argument("knn_score: label count mismatch");
    if (k < 1 || k > n) throw std::invalid_argument("knn_score: k out of range");
    if (test.cols() != train.cols()) throw std::invalid_argument("knn_score: dimension mismatch");

    Eigen::VectorXd scores(test.rows());
    std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(n));
    for (int i = 0; i < test.rows(); ++i) {
        for (int j = 0; j < n; ++j)
            dist[static_cast<std::size_t>(j)] = {test.row_squared_distance(i, train, j), j};
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end()); // (distance, index) pairs
        int positives = 0;
        for (int j = 0; j < k; ++j)
            positives += y[static_cast<std::size_t>(dist[static_cast<std::size_t>(j)].second)];
        scores(i) = static_cast<double>(positives) / static_cast<double>(k);
    }
    return scores;
}

class KnnScorer final : public BinaryScorer {
public:
    KnnScorer(FeatureMatrix train, std::vector<std::uint8_t> y, int k)
        : train_(std::move(train)), y_(std::move(y)), k_(k) {
        if (k_ < 1 || k_ > train_.rows()) throw std::invalid_argument("KnnScorer: k out of range");
    }

    Eigen::VectorXd score(const FeatureMatrix& x) const override {
        return knn_score(train_, y_, k_, x);
    }

private:
    FeatureMatrix train_;
    std::vector<std::uint8_t> y_;
    int k_;
};

} // namespace mlc
