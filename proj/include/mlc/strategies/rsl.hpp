#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

/// Ranking via Single-Label learning, cross-training variant: every training
/// row is duplicated once per relevant label (zero-label rows drop out), a
/// single one-vs-rest multiclass model is trained over the L label-classes,
/// and its calibrated class scores are the label ranking scores.
class RslModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        if (prior_fallback_) return prior_fallback_->predict(x);
        return ovr_.scores(x);
    }

    int target_columns() const override { return num_labels_; }

    friend std::unique_ptr<RslModel> rsl_fit(const FeatureMatrix&, const LabelMatrix&,
                                             const BinaryLearnerSpec&, std::uint64_t);

private:
    int num_labels_ = 0;
    OvrModel ovr_;
    std::unique_ptr<ConstantModel> prior_fallback_; // set when training had no positives
};

inline std::unique_ptr<RslModel> rsl_fit(const FeatureMatrix& x, const LabelMatrix& y,
                                         const BinaryLearnerSpec& base, std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("rsl_fit: empty training set");

    auto model = std::make_unique<RslModel>();
    model->num_labels_ = y.cols();

    std::vector<int> rows;
    std::vector<int> class_ids;
    for (int i = 0; i < y.rows(); ++i)
        for (int label : y.row(i)) {
            rows.push_back(i);
            class_ids.push_back(label);
        }

    if (rows.empty()) {
        model->prior_fallback_ =
            std::make_unique<ConstantModel>(y.positive_priors().transpose());
        return model;
    }

    model->ovr_ = OvrModel::fit(base, x.subset(rows), class_ids, y.cols(), seed);
    return model;
}

} // namespace mlc
