#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

/// A fitted binary model emitting calibrated relevance scores in [0,1].
class BinaryScorer {
public:
    virtual ~BinaryScorer() = default;
    virtual Eigen::VectorXd score(const FeatureMatrix& x) const = 0;
};

class ConstantScorer final : public BinaryScorer {
public:
    explicit ConstantScorer(double value) : value_(value) {}
    Eigen::VectorXd score(const FeatureMatrix& x) const override {
        return Eigen::VectorXd::Constant(x.rows(), value_);
    }
    double value() const { return value_; }

private:
    double value_;
};

enum class ScoreLink {
    clamp01,  // ridge on {0,1} targets
    logistic, // margin-based learners
};

class LinearScorer final : public BinaryScorer {
public:
    LinearScorer(Eigen::VectorXd weights, double bias, ScoreLink link)
        : weights_(std::move(weights)), bias_(bias), link_(link) {}

    Eigen::VectorXd decision_values(const FeatureMatrix& x) const {
        return x.multiply(weights_).array() + bias_;
    }

    Eigen::VectorXd score(const FeatureMatrix& x) const override {
        Eigen::VectorXd d = decision_values(x);
        if (link_ == ScoreLink::clamp01)
            return d.cwiseMax(0.0).cwiseMin(1.0);
        return d.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    }

    const Eigen::VectorXd& weights() const { return weights_; }
    double bias() const { return bias_; }

private:
    Eigen::VectorXd weights_;
    double bias_;
    ScoreLink link_;
};

} // namespace mlc
