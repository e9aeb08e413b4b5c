#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/problem.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

/// Binary Relevance: one independent binary learner per label. With
/// real-valued targets (under a label-space reduction) it becomes per-column
/// ridge regression and emits raw predictions; this is the one
/// regression-capable terminal.
class BrModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        if (!binary_) return ridge_.predict(x);
        Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(scorers_.size()));
        for (std::size_t j = 0; j < scorers_.size(); ++j)
            out.col(static_cast<Eigen::Index>(j)) = scorers_[j]->score(x);
        return out;
    }

    int target_columns() const override {
        return binary_ ? static_cast<int>(scorers_.size()) : static_cast<int>(ridge_.weights.cols());
    }

    friend std::unique_ptr<BrModel> br_fit(const FeatureMatrix&, const Targets&,
                                           const BinaryLearnerSpec&, std::uint64_t);

private:
    bool binary_ = true;
    std::vector<std::unique_ptr<BinaryScorer>> scorers_;
    RidgeModel ridge_;
};

inline std::unique_ptr<BrModel> br_fit(const FeatureMatrix& x, const Targets& targets,
                                       const BinaryLearnerSpec& base, std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("br_fit: empty training set");
    auto model = std::make_unique<BrModel>();
    if (!targets.is_binary()) {
        if (!base.regression_capable())
            throw std::invalid_argument("br_fit: real-valued targets require the ridge base learner");
        model->binary_ = false;
        model->ridge_ = ridge_fit(x, targets.reals(), base.ridge_lambda);
        return model;
    }

    const LabelMatrix& y = targets.labels();
    const int num_labels = y.cols();
    model->scorers_.resize(static_cast<std::size_t>(num_labels));
    detail::parallel_for(num_labels, [&](int j) {
        std::vector<std::uint8_t> column(static_cast<std::size_t>(y.rows()));
        for (int i = 0; i < y.rows(); ++i)
            column[static_cast<std::size_t>(i)] = y.contains(i, j) ? 1 : 0;
        model->scorers_[static_cast<std::size_t>(j)] =
            fit_binary(base, x, column, derive_seed(seed, static_cast<std::uint64_t>(j)));
    });
    return model;
}

} // namespace mlc
