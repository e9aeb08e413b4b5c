#pragma once

#include <Eigen/Dense>
#include <memory>

#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

/// A fitted terminal strategy. For binary targets the output is calibrated
/// scores in [0,1]; in regression mode (below a label-space reduction) the
/// output is raw predictions that the reducing stage decodes.
class TerminalModel {
public:
    virtual ~TerminalModel() = default;
    virtual Eigen::MatrixXd predict(const FeatureMatrix& x) const = 0;
    virtual int target_columns() const = 0;
};

/// Emits one fixed row everywhere. Used for zero-row sub-problems (parent
/// priors) and as the no-positives fallback.
class ConstantModel final : public TerminalModel {
public:
    explicit ConstantModel(Eigen::RowVectorXd row) : row_(std::move(row)) {}

    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        return row_.replicate(x.rows(), 1);
    }

    int target_columns() const override { return static_cast<int>(row_.size()); }
    const Eigen::RowVectorXd& row() const { return row_; }

private:
    Eigen::RowVectorXd row_;
};

} // namespace mlc
