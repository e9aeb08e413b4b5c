#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mlc {

/// Binary n x L matrix stored as per-row sorted label-index sets. Rows may be
/// empty (zero-label instances are legal). Doubles as the prediction matrix.
class LabelMatrix {
public:
    LabelMatrix() = default;

    LabelMatrix(std::vector<std::vector<int>> rows, int num_labels)
        : rows_(std::move(rows)), num_labels_(num_labels) {
        if (num_labels_ < 0) throw std::invalid_argument("LabelMatrix: negative label count");
        for (auto& row : rows_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            for (int l : row)
                if (l < 0 || l >= num_labels_)
                    throw std::invalid_argument("LabelMatrix: label index out of range");
        }
    }

    static LabelMatrix from_dense(const Eigen::MatrixXd& m, double threshold = 0.5) {
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (m(i, j) >= threshold) rows[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
        return LabelMatrix(std::move(rows), static_cast<int>(m.cols()));
    }

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return num_labels_; }

    const std::vector<int>& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

    bool contains(int i, int label) const {
        const auto& r = row(i);
        return std::binary_search(r.begin(), r.end(), label);
    }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows(), num_labels_);
        for (int i = 0; i < rows(); ++i)
            for (int l : row(i)) m(i, l) = 1.0;
        return m;
    }

    LabelMatrix subset(std::span<const int> row_ids) const {
        std::vector<std::vector<int>> picked;
        picked.reserve(row_ids.size());
        for (int id : row_ids) picked.push_back(rows_[static_cast<std::size_t>(id)]);
        LabelMatrix out;
        out.rows_ = std::move(picked);
        out.num_labels_ = num_labels_;
        return out;
    }

    /// Projection onto a label subset, reindexed to local 0..|subset|-1.
    LabelMatrix restrict_to(std::span<const int> labels) const {
        std::vector<int> position(static_cast<std::size_t>(num_labels_), -1);
        for (std::size_t k = 0; k < labels.size(); ++k) position[static_cast<std::size_t>(labels[k])] = static_cast<int>(k);
        std::vector<std::vector<int>> rows(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (int l : rows_[i])
                if (position[static_cast<std::size_t>(l)] >= 0) rows[i].push_back(position[static_cast<std::size_t>(l)]);
        return LabelMatrix(std::move(rows), static_cast<int>(labels.size()));
    }

    std::vector<int> column_positive_counts() const {
        std::vector<int> counts(static_cast<std::size_t>(num_labels_), 0);
        for (const auto& row : rows_)
            for (int l : row) ++counts[static_cast<std::size_t>(l)];
        return counts;
    }

    /// Per-label positive rate over rows (empty matrix -> zeros).
    Eigen::VectorXd positive_priors() const {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(num_labels_);
        if (rows_.empty()) return p;
        const auto counts = column_positive_counts();
        for (int j = 0; j < num_labels_; ++j)
            p(j) = static_cast<double>(counts[static_cast<std::size_t>(j)]) / static_cast<double>(rows());
        return p;
    }

    long long total_positives() const {
        long long t = 0;
        for (const auto& row : rows_) t += static_cast<long long>(row.size());
        return t;
    }

    int distinct_labelsets() const {
        std::set<std::vector<int>> seen(rows_.begin(), rows_.end());
        return static_cast<int>(seen.size());
    }

    friend bool operator==(const LabelMatrix& a, const LabelMatrix& b) {
        return a.num_labels_ == b.num_labels_ && a.rows_ == b.rows_;
    }

private:
    std::vector<std::vector<int>> rows_;
    int num_labels_ = 0;
};

using PredictionMatrix = LabelMatrix;

} // namespace mlc
