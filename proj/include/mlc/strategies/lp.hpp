#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/problem.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

/// Label Powerset: each distinct training labelset becomes one class of a
/// one-vs-rest multiclass model. Class ids follow first occurrence in the
/// training data. Label score = sum of normalized class scores over classes
/// containing the label, so predictions only ever support training labelsets.
class LpModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        const Eigen::MatrixXd normalized = normalized_class_scores(x);
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), num_labels_);
        for (std::size_t c = 0; c < class_labelsets_.size(); ++c)
            for (int label : class_labelsets_[c])
                out.col(label) += normalized.col(static_cast<Eigen::Index>(c));
        return out;
    }

    int target_columns() const override { return num_labels_; }

    /// Per-class scores rescaled to sum to 1 per row (uniform on all-zero rows).
    Eigen::MatrixXd normalized_class_scores(const FeatureMatrix& x) const {
        Eigen::MatrixXd scores = ovr_.scores(x);
        for (Eigen::Index i = 0; i < scores.rows(); ++i) {
            const double total = scores.row(i).sum();
            if (total > 0.0)
                scores.row(i) /= total;
            else
                scores.row(i).setConstant(1.0 / static_cast<double>(scores.cols()));
        }
        return scores;
    }

    const std::vector<std::vector<int>>& class_labelsets() const { return class_labelsets_; }
    int num_classes() const { return ovr_.num_classes(); }

    friend std::unique_ptr<LpModel> lp_fit(const FeatureMatrix&, const LabelMatrix&,
                                           const BinaryLearnerSpec&, std::uint64_t);

private:
    int num_labels_ = 0;
    std::vector<std::vector<int>> class_labelsets_; // class id -> labelset
    OvrModel ovr_;
};

inline std::unique_ptr<LpModel> lp_fit(const FeatureMatrix& x, const LabelMatrix& y,
                                       const BinaryLearnerSpec& base, std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("lp_fit: empty training set");

    auto model = std::make_unique<LpModel>();
    model->num_labels_ = y.cols();

    std::map<std::vector<int>, int> class_of;
    std::vector<int> class_ids(static_cast<std::size_t>(y.rows()));
    for (int i = 0; i < y.rows(); ++i) {
        const auto& labelset = y.row(i);
        auto [it, inserted] = class_of.try_emplace(labelset, static_cast<int>(model->class_labelsets_.size()));
        if (inserted) model->class_labelsets_.push_back(labelset);
        class_ids[static_cast<std::size_t>(i)] = it->second;
    }

    model->ovr_ = OvrModel::fit(base, x, class_ids,
                                static_cast<int>(model->class_labelsets_.size()), seed);
    return model;
}

} // namespace mlc
