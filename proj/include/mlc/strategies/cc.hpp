#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/problem.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

struct ChainOrder {
    std::vector<int> permutation;

    static ChainOrder identity(int num_labels) {
        ChainOrder o;
        o.permutation.resize(static_cast<std::size_t>(num_labels));
        std::iota(o.permutation.begin(), o.permutation.end(), 0);
        return o;
    }

    static ChainOrder random(int num_labels, std::uint64_t seed) {
        ChainOrder o = identity(num_labels);
        Rng rng(seed);
        rng.shuffle(o.permutation);
        return o;
    }

    static ChainOrder given(std::vector<int> permutation) {
        ChainOrder o;
        o.permutation = std::move(permutation);
        std::vector<int> sorted = o.permutation;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i))
                throw std::invalid_argument("ChainOrder: not a permutation of the labels");
        return o;
    }
};

/// Classifier Chain: the t-th link trains on features augmented with the true
/// values of the previous t-1 chain labels, and predicts with the previous
/// links' hard 0/1 decisions (score >= 0.5).
class CcModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        const int num_labels = static_cast<int>(order_.permutation.size());
        Eigen::MatrixXd scores(x.rows(), num_labels);
        Eigen::MatrixXd hard(x.rows(), 0);
        for (int t = 0; t < num_labels; ++t) {
            const FeatureMatrix augmented = t == 0 ? x : x.with_appended_columns(hard);
            const Eigen::VectorXd link = links_[static_cast<std::size_t>(t)]->score(augmented);
            scores.col(order_.permutation[static_cast<std::size_t>(t)]) = link;
            hard.conservativeResize(Eigen::NoChange, t + 1);
            hard.col(t) = (link.array() >= 0.5).cast<double>();
        }
        return scores;
    }

    int target_columns() const override { return static_cast<int>(order_.permutation.size()); }
    const ChainOrder& order() const { return order_; }
    const std::vector<std::unique_ptr<BinaryScorer>>& links() const { return links_; }

    friend std::unique_ptr<CcModel> cc_fit(const FeatureMatrix&, const LabelMatrix&,
                                           const BinaryLearnerSpec&, ChainOrder, std::uint64_t);

private:
    ChainOrder order_;
    std::vector<std::unique_ptr<BinaryScorer>> links_; // in chain order
};

inline std::unique_ptr<CcModel> cc_fit(const FeatureMatrix& x, const LabelMatrix& y,
                                       const BinaryLearnerSpec& base, ChainOrder order,
                                       std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("cc_fit: empty training set");
    if (static_cast<int>(order.permutation.size()) != y.cols())
        throw std::invalid_argument("cc_fit: chain order length must equal the label count");

    auto model = std::make_unique<CcModel>();
    model->order_ = std::move(order);
    const int num_labels = y.cols();
    const int n = x.rows();

    Eigen::MatrixXd previous_truth(n, 0);
    for (int t = 0; t < num_labels; ++t) {
        const int label = model->order_.permutation[static_cast<std::size_t>(t)];
        const FeatureMatrix augmented = t == 0 ? x : x.with_appended_columns(previous_truth);
        std::vector<std::uint8_t> column(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = y.contains(i, label) ? 1 : 0;
        model->links_.push_back(
            fit_binary(base, augmented, column, derive_seed(seed, static_cast<std::uint64_t>(t))));
        previous_truth.conservativeResize(Eigen::NoChange, t + 1);
        for (int i = 0; i < n; ++i) previous_truth(i, t) = column[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    }
    return model;
}

} // namespace mlc
