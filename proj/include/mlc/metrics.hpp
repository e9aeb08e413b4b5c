#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlc/core/label_matrix.hpp"
#include "mlc/thresholding.hpp"

namespace mlc {

struct MetricReport {
    std::map<std::string, double> values;
    int n = 0;
    int num_labels = 0;
    std::vector<std::string> conventions;

    double at(const std::string& name) const {
        auto it = values.find(name);
        if (it == values.end()) throw std::invalid_argument("no metric named '" + name + "'");
        return it->second;
    }

    void merge(const MetricReport& other) {
        values.insert(other.values.begin(), other.values.end());
        conventions.insert(conventions.end(), other.conventions.begin(), other.conventions.end());
    }
};

namespace detail {
inline void require_same_shape(int rows_a, int cols_a, int rows_b, int cols_b, const char* who) {
    if (rows_a != rows_b || cols_a != cols_b)
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
}
} // namespace detail

/// hamming_loss, subset_accuracy, example_f1 (rows with neither truth nor
/// prediction contribute F1 = 1).
inline MetricReport example_metrics(const LabelMatrix& truth, const PredictionMatrix& predicted) {
    detail::require_same_shape(truth.rows(), truth.cols(), predicted.rows(), predicted.cols(),
                               "example_metrics");
    const int n = truth.rows();
    const int num_labels = truth.cols();

    long long mismatched = 0;
    int exact = 0;
    double f1_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& y = truth.row(i);
        const auto& p = predicted.row(i);
        std::vector<int> intersection;
        std::set_intersection(y.begin(), y.end(), p.begin(), p.end(), std::back_inserter(intersection));
        const auto common = static_cast<long long>(intersection.size());
        mismatched += static_cast<long long>(y.size()) + static_cast<long long>(p.size()) - 2 * common;
        if (y == p) ++exact;
        const auto denom = static_cast<long long>(y.size()) + static_cast<long long>(p.size());
        f1_sum += denom == 0 ? 1.0 : 2.0 * static_cast<double>(common) / static_cast<double>(denom);
    }

    MetricReport report;
    report.n = n;
    report.num_labels = num_labels;
    report.values["hamming_loss"] =
        n == 0 || num_labels == 0 ? 0.0
                                  : static_cast<double>(mismatched) / (static_cast<double>(n) * num_labels);
    report.values["subset_accuracy"] = n == 0 ? 1.0 : static_cast<double>(exact) / n;
    report.values["example_f1"] = n == 0 ? 1.0 : f1_sum / n;
    report.conventions.push_back("example_f1: empty truth and prediction count as 1");
    return report;
}

/// macro_f1 (per-label F1, 1 when a label has no positives and no predictions,
/// else 0/0 parts resolve to 0) and micro_f1 (pooled counts).
inline MetricReport label_metrics(const LabelMatrix& truth, const PredictionMatrix& predicted) {
    detail::require_same_shape(truth.rows(), truth.cols(), predicted.rows(), predicted.cols(),
                               "label_metrics");
    const int n = truth.rows();
    const int num_labels = truth.cols();

    long long pooled_tp = 0, pooled_fp = 0, pooled_fn = 0;
    double macro_sum = 0.0;
    for (int j = 0; j < num_labels; ++j) {
        long long tp = 0, fp = 0, fn = 0;
        for (int i = 0; i < n; ++i) {
            const bool actual = truth.contains(i, j);
            const bool guess = predicted.contains(i, j);
            if (actual && guess) ++tp;
            else if (guess) ++fp;
            else if (actual) ++fn;
        }
        pooled_tp += tp;
        pooled_fp += fp;
        pooled_fn += fn;
        macro_sum += (2 * tp + fp + fn) == 0
                         ? 1.0
                         : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    }

    MetricReport report;
    report.n = n;
    report.num_labels = num_labels;
    report.values["macro_f1"] = num_labels == 0 ? 1.0 : macro_sum / num_labels;
    report.values["micro_f1"] =
        (2 * pooled_tp + pooled_fp + pooled_fn) == 0
            ? 1.0
            : 2.0 * static_cast<double>(pooled_tp) / static_cast<double>(2 * pooled_tp + pooled_fp + pooled_fn);
    report.conventions.push_back("macro_f1: labels with no positives and no predictions count as 1");
    return report;
}

/// ranking_loss (ties count 0.5), one_error, coverage (ranks from 0),
/// average_precision. Ranks order by score descending, label index ascending.
/// Rows without both a relevant and an irrelevant label are excluded from
/// ranking_loss; rows with no relevant label are excluded from the others.
inline MetricReport ranking_metrics(const LabelMatrix& truth, const ScoreMatrix& scores) {
    detail::require_same_shape(truth.rows(), truth.cols(), static_cast<int>(scores.rows()),
                               static_cast<int>(scores.cols()), "ranking_metrics");
    const int n = truth.rows();
    const int num_labels = truth.cols();

    double rl_sum = 0.0;
    int rl_rows = 0;
    int oe_errors = 0, oe_rows = 0;
    double coverage_sum = 0.0;
    double ap_sum = 0.0;
    int relevant_rows = 0;

    std::vector<int> order(static_cast<std::size_t>(num_labels));
    std::vector<int> rank(static_cast<std::size_t>(num_labels));
    for (int i = 0; i < n; ++i) {
        const auto& relevant = truth.row(i);
        const int num_relevant = static_cast<int>(relevant.size());
        const int num_irrelevant = num_labels - num_relevant;
        if (num_relevant == 0) continue;

        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (scores(i, a) != scores(i, b)) return scores(i, a) > scores(i, b);
            return a < b;
        });
        for (int pos = 0; pos < num_labels; ++pos)
            rank[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;

        if (num_irrelevant > 0) {
            // single descending sweep over score groups: a relevant label is
            // reversed by every irrelevant one strictly above it and by half
            // of those tied with it
            double discordant = 0.0;
            int irrelevant_above = 0;
            std::size_t group_begin = 0;
            while (group_begin < order.size()) {
                std::size_t group_end = group_begin;
                while (group_end < order.size() &&
                       scores(i, order[group_end]) == scores(i, order[group_begin]))
                    ++group_end;
                int relevant_in_group = 0, irrelevant_in_group = 0;
                for (std::size_t t = group_begin; t < group_end; ++t) {
                    if (truth.contains(i, order[t])) ++relevant_in_group;
                    else ++irrelevant_in_group;
                }
                discordant += relevant_in_group *
                              (static_cast<double>(irrelevant_above) + 0.5 * irrelevant_in_group);
                irrelevant_above += irrelevant_in_group;
                group_begin = group_end;
            }
            rl_sum += discordant / (static_cast<double>(num_relevant) * num_irrelevant);
            ++rl_rows;
        }

        ++oe_rows;
        if (!truth.contains(i, order[0])) ++oe_errors;

        int max_rank = 0;
        for (int rel : relevant) max_rank = std::max(max_rank, rank[static_cast<std::size_t>(rel)]);
        coverage_sum += static_cast<double>(max_rank);

        double precision_sum = 0.0;
        for (int rel : relevant) {
            const int r = rank[static_cast<std::size_t>(rel)];
            int relevant_at_or_above = 0;
            for (int other : relevant)
                if (rank[static_cast<std::size_t>(other)] <= r) ++relevant_at_or_above;
            precision_sum += static_cast<double>(relevant_at_or_above) / static_cast<double>(r + 1);
        }
        ap_sum += precision_sum / static_cast<double>(num_relevant);
        ++relevant_rows;
    }

    MetricReport report;
    report.n = n;
    report.num_labels = num_labels;
    report.values["ranking_loss"] = rl_rows == 0 ? 0.0 : rl_sum / rl_rows;
    report.values["one_error"] =
        oe_rows == 0 ? 0.0 : static_cast<double>(oe_errors) / static_cast<double>(oe_rows);
    report.values["coverage"] = relevant_rows == 0 ? 0.0 : coverage_sum / relevant_rows;
    report.values["average_precision"] = relevant_rows == 0 ? 1.0 : ap_sum / relevant_rows;
    report.conventions.push_back("ranking_loss: tied pairs count 0.5; all-positive/all-negative rows excluded");
    report.conventions.push_back("one_error/coverage/average_precision: rows with no relevant label excluded");
    report.conventions.push_back("rank ties: lower label index ranks first");
    return report;
}

/// All metric families in one report.
inline MetricReport compute_all_metrics(const LabelMatrix& truth, const PredictionMatrix& predicted,
                                        const ScoreMatrix& scores) {
    MetricReport report = example_metrics(truth, predicted);
    report.merge(label_metrics(truth, predicted));
    report.merge(ranking_metrics(truth, scores));
    return report;
}

/// Canonical metric column order for reports.
inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "hamming_loss", "subset_accuracy", "example_f1",
        "macro_f1",     "micro_f1",        "ranking_loss",
        "one_error",    "coverage",        "average_precision"};
    return names;
}

} // namespace mlc
