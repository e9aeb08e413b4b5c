#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "mlc/core/label_matrix.hpp"
#include "mlc/core/sparse_matrix.hpp"

namespace mlc {

class Dataset {
public:
    Dataset() = default;

    Dataset(FeatureMatrix features, LabelMatrix labels, std::string name = "")
        : features_(std::move(features)), labels_(std::move(labels)), name_(std::move(name)) {
        if (features_.rows() != labels_.rows())
            throw std::invalid_argument("Dataset: feature/label row count mismatch");
    }

    const FeatureMatrix& features() const { return features_; }
    const LabelMatrix& labels() const { return labels_; }
    const std::string& name() const { return name_; }

    int rows() const { return features_.rows(); }
    int num_features() const { return features_.cols(); }
    int num_labels() const { return labels_.cols(); }

    Dataset subset(std::span<const int> row_ids) const {
        return Dataset(features_.subset(row_ids), labels_.subset(row_ids), name_);
    }

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.features_ == b.features_ && a.labels_ == b.labels_;
    }

private:
    FeatureMatrix features_;
    LabelMatrix labels_;
    std::string name_;
};

struct StatsRecord {
    int n = 0;
    int num_features = 0;       // numF
    int num_labels = 0;         // numL
    long long total_positives = 0;
    double cardinality = 0.0;   // mean labels per instance
    double density = 0.0;       // cardinality / numL
    int distinct_labelsets = 0;
};

inline StatsRecord dataset_stats(const Dataset& ds) {
    StatsRecord s;
    s.n = ds.rows();
    s.num_features = ds.num_features();
    s.num_labels = ds.num_labels();
    s.total_positives = ds.labels().total_positives();
    s.cardinality = s.n > 0 ? static_cast<double>(s.total_positives) / static_cast<double>(s.n) : 0.0;
    s.density = s.num_labels > 0 ? s.cardinality / static_cast<double>(s.num_labels) : 0.0;
    s.distinct_labelsets = s.n > 0 ? ds.labels().distinct_labelsets() : 0;
    return s;
}

} // namespace mlc
