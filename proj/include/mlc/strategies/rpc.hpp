#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

/// Ranking by Pairwise Comparison: one binary learner per label pair (i,j),
/// i<j, trained on rows where exactly one of the two labels is relevant
/// (positive class: i relevant). Pairs with no eligible rows are skipped and
/// count 0.5 toward both sides. score(j) = sum of j's pairwise confidences
/// over its L-1 pairs, divided by L-1.
class RpcModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        const int n = x.rows();
        Eigen::MatrixXd votes = Eigen::MatrixXd::Zero(n, num_labels_);
        std::vector<Eigen::VectorXd> pair_scores(pairs_.size());
        detail::parallel_for(static_cast<int>(pairs_.size()), [&](int p) {
            if (scorers_[static_cast<std::size_t>(p)])
                pair_scores[static_cast<std::size_t>(p)] =
                    scorers_[static_cast<std::size_t>(p)]->score(x);
        });
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [i, j] = pairs_[p];
            if (scorers_[p]) {
                votes.col(i) += pair_scores[p];
                votes.col(j) += (1.0 - pair_scores[p].array()).matrix();
            } else {
                votes.col(i).array() += 0.5;
                votes.col(j).array() += 0.5;
            }
        }
        return votes / static_cast<double>(num_labels_ - 1);
    }

    int target_columns() const override { return num_labels_; }

    /// n-vector of confidences that label i beats label j (1 - value for j over i).
    Eigen::VectorXd pair_confidence(int i, int j, const FeatureMatrix& x) const {
        for (std::size_t p = 0; p < pairs_.size(); ++p)
            if (pairs_[p].first == i && pairs_[p].second == j)
                return scorers_[p] ? scorers_[p]->score(x)
                                   : Eigen::VectorXd::Constant(x.rows(), 0.5);
        throw std::invalid_argument("pair_confidence: no such pair");
    }

    friend std::unique_ptr<RpcModel> rpc_fit(const FeatureMatrix&, const LabelMatrix&,
                                             const BinaryLearnerSpec&, std::uint64_t);

private:
    int num_labels_ = 0;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::unique_ptr<BinaryScorer>> scorers_; // null = skipped pair
};

inline std::unique_ptr<RpcModel> rpc_fit(const FeatureMatrix& x, const LabelMatrix& y,
                                         const BinaryLearnerSpec& base, std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("rpc_fit: empty training set");
    if (y.cols() < 2) throw std::invalid_argument("rpc_fit: needs at least two labels");

    auto model = std::make_unique<RpcModel>();
    model->num_labels_ = y.cols();
    for (int i = 0; i < y.cols(); ++i)
        for (int j = i + 1; j < y.cols(); ++j) model->pairs_.emplace_back(i, j);

    model->scorers_.resize(model->pairs_.size());
    detail::parallel_for(static_cast<int>(model->pairs_.size()), [&](int p) {
        const auto [i, j] = model->pairs_[static_cast<std::size_t>(p)];
        std::vector<int> rows;
        std::vector<std::uint8_t> targets;
        for (int r = 0; r < y.rows(); ++r) {
            const bool has_i = y.contains(r, i);
            const bool has_j = y.contains(r, j);
            if (has_i != has_j) {
                rows.push_back(r);
                targets.push_back(has_i ? 1 : 0);
            }
        }
        if (rows.empty()) return; // skipped pair
        model->scorers_[static_cast<std::size_t>(p)] =
            fit_binary(base, x.subset(rows), targets, derive_seed(seed, static_cast<std::uint64_t>(p)));
    });
    return model;
}

} // namespace mlc
