#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mlc {

struct FeatureEntry {
    int index;
    double value;
    friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

using SparseRow = std::vector<FeatureEntry>;

/// Sparse row-major feature matrix. Rows hold (index, value) pairs sorted by
/// index; absent indices are zero. Densified on demand.
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    FeatureMatrix(std::vector<SparseRow> rows, int cols) : rows_(std::move(rows)), cols_(cols) {
        if (cols_ < 0) throw std::invalid_argument("FeatureMatrix: negative column count");
        for (auto& row : rows_) {
            std::sort(row.begin(), row.end(),
                      [](const FeatureEntry& a, const FeatureEntry& b) { return a.index < b.index; });
            int last = -1;
            for (const auto& e : row) {
                if (e.index < 0 || e.index >= cols_)
                    throw std::invalid_argument("FeatureMatrix: feature index out of range");
                if (e.index == last)
                    throw std::invalid_argument("FeatureMatrix: duplicate feature index in row");
                if (!std::isfinite(e.value))
                    throw std::invalid_argument("FeatureMatrix: non-finite feature value");
                last = e.index;
            }
        }
    }

    static FeatureMatrix from_dense(const Eigen::MatrixXd& m) {
        std::vector<SparseRow> rows(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            auto& row = rows[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0.0) row.push_back({static_cast<int>(j), m(i, j)});
        }
        return FeatureMatrix(std::move(rows), static_cast<int>(m.cols()));
    }

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    const SparseRow& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows(), cols_);
        for (int i = 0; i < rows(); ++i)
            for (const auto& e : row(i)) m(i, e.index) = e.value;
        return m;
    }

    Eigen::VectorXd column_means() const {
        Eigen::VectorXd sums = Eigen::VectorXd::Zero(cols_);
        for (const auto& row : rows_)
            for (const auto& e : row) sums(e.index) += e.value;
        if (!rows_.empty()) sums /= static_cast<double>(rows_.size());
        return sums;
    }

    FeatureMatrix subset(std::span<const int> row_ids) const {
        std::vector<SparseRow> picked;
        picked.reserve(row_ids.size());
        for (int id : row_ids) picked.push_back(rows_[static_cast<std::size_t>(id)]);
        FeatureMatrix out;
        out.rows_ = std::move(picked);
        out.cols_ = cols_;
        return out;
    }

    double row_squared_norm(int i) const {
        double s = 0.0;
        for (const auto& e : row(i)) s += e.value * e.value;
        return s;
    }

    double row_dot(int i, const Eigen::VectorXd& w) const {
        double s = 0.0;
        for (const auto& e : row(i)) s += e.value * w(e.index);
        return s;
    }

    /// Squared Euclidean distance between row i and a dense vector.
    double row_squared_distance(int i, const Eigen::VectorXd& v) const {
        double s = v.squaredNorm();
        for (const auto& e : row(i)) {
            const double d = v(e.index);
            s += e.value * e.value - 2.0 * e.value * d;
        }
        return s;
    }

    /// Squared Euclidean distance between row i here and row j of other.
    double row_squared_distance(int i, const FeatureMatrix& other, int j) const {
        const SparseRow& a = row(i);
        const SparseRow& b = other.row(j);
        double s = 0.0;
        std::size_t pa = 0, pb = 0;
        while (pa < a.size() && pb < b.size()) {
            if (a[pa].index == b[pb].index) {
                const double d = a[pa].value - b[pb].value;
                s += d * d;
                ++pa;
                ++pb;
            } else if (a[pa].index < b[pb].index) {
                s += a[pa].value * a[pa].value;
                ++pa;
            } else {
                s += b[pb].value * b[pb].value;
                ++pb;
            }
        }
        for (; pa < a.size(); ++pa) s += a[pa].value * a[pa].value;
        for (; pb < b.size(); ++pb) s += b[pb].value * b[pb].value;
        return s;
    }

    /// X * w for dense w of length cols().
    Eigen::VectorXd multiply(const Eigen::VectorXd& w) const {
        Eigen::VectorXd out(rows());
        for (int i = 0; i < rows(); ++i) out(i) = row_dot(i, w);
        return out;
    }

    /// X * M for dense M with cols() rows.
    Eigen::MatrixXd multiply(const Eigen::MatrixXd& m) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows(), m.cols());
        for (int i = 0; i < rows(); ++i)
            for (const auto& e : row(i)) out.row(i) += e.value * m.row(e.index);
        return out;
    }

    /// X^T * M for dense M with rows() rows.
    Eigen::MatrixXd transpose_multiply(const Eigen::MatrixXd& m) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(cols_, m.cols());
        for (int i = 0; i < rows(); ++i)
            for (const auto& e : row(i)) out.row(e.index) += e.value * m.row(i);
        return out;
    }

    double frobenius_squared() const {
        double s = 0.0;
        for (int i = 0; i < rows(); ++i) s += row_squared_norm(i);
        return s;
    }

    /// New matrix [this | extra] with extra given densely (zeros dropped).
    FeatureMatrix with_appended_columns(const Eigen::MatrixXd& extra) const {
        if (static_cast<int>(extra.rows()) != rows())
            throw std::invalid_argument("with_appended_columns: row count mismatch");
        FeatureMatrix out;
        out.cols_ = cols_ + static_cast<int>(extra.cols());
        out.rows_ = rows_;
        for (int i = 0; i < rows(); ++i)
            for (Eigen::Index j = 0; j < extra.cols(); ++j)
                if (extra(i, j) != 0.0)
                    out.rows_[static_cast<std::size_t>(i)].push_back(
                        {cols_ + static_cast<int>(j), extra(i, j)});
        return out;
    }

    friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

private:
    std::vector<SparseRow> rows_;
    int cols_ = 0;
};

} // namespace mlc
