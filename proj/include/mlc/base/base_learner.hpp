#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mlc/base/knn.hpp"
#include "mlc/base/linear_svm.hpp"
#include "mlc/base/ridge.hpp"
#include "mlc/base/scorer.hpp"
#include "mlc/core/error.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"

namespace mlc {

// Score assigned by the constant fallback when every training target is equal:
// 0 -> 0.05 and 1 -> 0.95, keeping scores inside the open interval.
inline constexpr double kConstantNegativeScore = 0.05;
inline constexpr double kConstantPositiveScore = 0.95;

struct BinaryLearnerSpec {
    std::string name = "ridge"; // ridge | linear_svm | knn
    double ridge_lambda = 1.0;
    SvmParams svm;
    int knn_k = 5;

    bool regression_capable() const { return name == "ridge"; }

    /// Builds a spec from config-file strings; unknown or out-of-range
    /// parameters raise ConfigError.
    static BinaryLearnerSpec from_params(const std::string& name,
                                         const std::map<std::string, std::string>& params) {
        BinaryLearnerSpec spec;
        spec.name = name;
        auto number = [](const std::string& key, const std::string& raw) {
            double out = 0.0;
            auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
            if (ec != std::errc() || p != raw.data() + raw.size())
                throw ConfigError("base parameter '" + key + "' is not a number: " + raw);
            return out;
        };
        if (name == "ridge") {
            for (const auto& [key, raw] : params) {
                if (key == "lambda") spec.ridge_lambda = number(key, raw);
                else throw ConfigError("unknown ridge parameter '" + key + "'");
            }
            if (spec.ridge_lambda < 0.0) throw ConfigError("ridge lambda must be >= 0");
        } else if (name == "linear_svm") {
            for (const auto& [key, raw] : params) {
                if (key == "C") spec.svm.c = number(key, raw);
                else if (key == "tol") spec.svm.tol = number(key, raw);
                else if (key == "maxIter") spec.svm.max_sweeps = static_cast<int>(number(key, raw));
                else throw ConfigError("unknown linear_svm parameter '" + key + "'");
            }
            if (spec.svm.c <= 0.0) throw ConfigError("linear_svm C must be > 0");
            if (spec.svm.tol <= 0.0) throw ConfigError("linear_svm tol must be > 0");
            if (spec.svm.max_sweeps < 1) throw ConfigError("linear_svm maxIter must be >= 1");
        } else if (name == "knn") {
            for (const auto& [key, raw] : params) {
                if (key == "k") spec.knn_k = static_cast<int>(number(key, raw));
                else throw ConfigError("unknown knn parameter '" + key + "'");
            }
            if (spec.knn_k < 1) throw ConfigError("knn k must be >= 1");
        } else {
            throw ConfigError("unknown base learner '" + name + "' (available: ridge, linear_svm, knn)");
        }
        return spec;
    }
};

/// Trains one calibrated binary scorer. Constant targets short-circuit to the
/// constant fallback; kNN's k is capped at the training size so small
/// sub-problems inside a pipeline stay fittable.
inline std::unique_ptr<BinaryScorer> fit_binary(const BinaryLearnerSpec& spec,
                                                const FeatureMatrix& x,
                                                const std::vector<std::uint8_t>& y,
                                                std::uint64_t seed) {
    const int n = x.rows();
    if (n < 1) throw std::invalid_argument("fit_binary: empty training set");
    if (static_cast<int>(y.size()) != n) throw std::invalid_argument("fit_binary: label count mismatch");

    bool all_positive = true, all_negative = true;
    for (std::uint8_t v : y) {
        if (v) all_negative = false;
        else all_positive = false;
    }
    if (all_positive) return std::make_unique<ConstantScorer>(kConstantPositiveScore);
    if (all_negative) return std::make_unique<ConstantScorer>(kConstantNegativeScore);

    if (spec.name == "ridge") {
        Eigen::MatrixXd targets(n, 1);
        for (int i = 0; i < n; ++i) targets(i, 0) = y[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        RidgeModel model = ridge_fit(x, targets, spec.ridge_lambda);
        return std::make_unique<LinearScorer>(model.weights.col(0), model.bias(0), ScoreLink::clamp01);
    }
    if (spec.name == "linear_svm") {
        std::vector<int> signed_y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) signed_y[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] ? 1 : -1;
        SvmTrainResult result = svm_dcd_fit(x, signed_y, spec.svm, seed);
        return std::make_unique<LinearScorer>(std::move(result.weights), result.bias, ScoreLink::logistic);
    }
    if (spec.name == "knn")
        return std::make_unique<KnnScorer>(x, y, std::min(spec.knn_k, n));
    throw ConfigError("unknown base learner '" + spec.name + "'");
}

/// One-vs-rest multiclass reduction over any binary base learner. A single
/// class is certain: its score is 1.0 everywhere.
class OvrModel {
public:
    static OvrModel fit(const BinaryLearnerSpec& spec, const FeatureMatrix& x,
                        const std::vector<int>& class_ids, int num_classes, std::uint64_t seed) {
        const int n = x.rows();
        if (num_classes < 1) throw std::invalid_argument("OvrModel: need at least one class");
        if (static_cast<int>(class_ids.size()) != n)
            throw std::invalid_argument("OvrModel: class id count mismatch");
        for (int c : class_ids)
            if (c < 0 || c >= num_classes) throw std::invalid_argument("OvrModel: class id out of range");

        OvrModel model;
        model.num_classes_ = num_classes;
        if (num_classes == 1) return model;
        model.scorers_.resize(static_cast<std::size_t>(num_classes));
        detail::parallel_for(num_classes, [&](int c) {
            std::vector<std::uint8_t> targets(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                targets[static_cast<std::size_t>(i)] =
                    class_ids[static_cast<std::size_t>(i)] == c ? 1 : 0;
            model.scorers_[static_cast<std::size_t>(c)] =
                fit_binary(spec, x, targets, derive_seed(seed, static_cast<std::uint64_t>(c)));
        });
        return model;
    }

    int num_classes() const { return num_classes_; }

    /// n x c calibrated per-class scores.
    Eigen::MatrixXd scores(const FeatureMatrix& x) const {
        if (num_classes_ == 1) return Eigen::MatrixXd::Ones(x.rows(), 1);
        Eigen::MatrixXd out(x.rows(), num_classes_);
        for (int c = 0; c < num_classes_; ++c)
            out.col(c) = scorers_[static_cast<std::size_t>(c)]->score(x);
        return out;
    }

    /// Hard class per row: argmax score, ties to the lower class id.
    static std::vector<int> argmax_rows(const Eigen::MatrixXd& scores) {
        std::vector<int> out(static_cast<std::size_t>(scores.rows()));
        for (Eigen::Index i = 0; i < scores.rows(); ++i) {
            int best = 0;
            for (Eigen::Index c = 1; c < scores.cols(); ++c)
                if (scores(i, c) > scores(i, best)) best = static_cast<int>(c);
            out[static_cast<std::size_t>(i)] = best;
        }
        return out;
    }

private:
    std::vector<std::unique_ptr<BinaryScorer>> scorers_;
    int num_classes_ = 0;
};

} // namespace mlc
