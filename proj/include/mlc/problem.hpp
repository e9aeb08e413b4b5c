#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <utility>

#include "mlc/core/label_matrix.hpp"
#include "mlc/core/sparse_matrix.hpp"
#include "mlc/dataset.hpp"

namespace mlc {

/// Training targets flowing through a pipeline: binary label sets at the top,
/// real-valued regression targets below a label-space reduction stage.
class Targets {
public:
    Targets() = default;

    static Targets binary(LabelMatrix labels) {
        Targets t;
        t.binary_ = true;
        t.labels_ = std::move(labels);
        return t;
    }

    static Targets real(Eigen::MatrixXd values) {
        Targets t;
        t.binary_ = false;
        t.reals_ = std::move(values);
        return t;
    }

    bool is_binary() const { return binary_; }
    int rows() const { return binary_ ? labels_.rows() : static_cast<int>(reals_.rows()); }
    int cols() const { return binary_ ? labels_.cols() : static_cast<int>(reals_.cols()); }

    const LabelMatrix& labels() const {
        if (!binary_) throw std::logic_error("Targets: not binary");
        return labels_;
    }

    const Eigen::MatrixXd& reals() const {
        if (binary_) throw std::logic_error("Targets: not real-valued");
        return reals_;
    }

    Eigen::MatrixXd to_dense() const { return binary_ ? labels_.to_dense() : reals_; }

    Targets subset(std::span<const int> row_ids) const {
        if (binary_) return binary(labels_.subset(row_ids));
        Eigen::MatrixXd picked(row_ids.size(), reals_.cols());
        for (std::size_t i = 0; i < row_ids.size(); ++i) picked.row(static_cast<Eigen::Index>(i)) = reals_.row(row_ids[i]);
        return real(std::move(picked));
    }

    /// Per-column means: positive priors for binary targets.
    Eigen::RowVectorXd column_means() const {
        if (binary_) return labels_.positive_priors().transpose();
        if (reals_.rows() == 0) return Eigen::RowVectorXd::Zero(reals_.cols());
        return reals_.colwise().mean();
    }

private:
    bool binary_ = true;
    LabelMatrix labels_;
    Eigen::MatrixXd reals_;
};

/// One sub-problem in the recursion: features plus targets with equal rows.
struct Problem {
    FeatureMatrix features;
    Targets targets;

    Problem() = default;
    Problem(FeatureMatrix f, Targets t) : features(std::move(f)), targets(std::move(t)) {
        if (features.rows() != targets.rows())
            throw std::invalid_argument("Problem: feature/target row count mismatch");
    }

    static Problem from_dataset(const Dataset& ds) {
        return Problem(ds.features(), Targets::binary(ds.labels()));
    }

    int rows() const { return features.rows(); }

    Problem subset(std::span<const int> row_ids) const {
        return Problem(features.subset(row_ids), targets.subset(row_ids));
    }
};

} // namespace mlc
