#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/strategies/lp.hpp"
#include "mlc/strategies/terminal.hpp"

namespace mlc {

namespace detail {

inline unsigned long long binomial_capped(int n, int k, unsigned long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long result = 1;
    for (int i = 1; i <= k; ++i) {
        // result *= (n - k + i) / i, capped to avoid overflow
        if (result > cap) return cap + 1;
        result = result * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    }
    return std::min(result, cap + 1);
}

inline void enumerate_k_subsets(int num_labels, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> current(static_cast<std::size_t>(k));
    std::iota(current.begin(), current.end(), 0);
    while (true) {
        out.push_back(current);
        int pos = k - 1;
        while (pos >= 0 && current[static_cast<std::size_t>(pos)] == num_labels - k + pos) --pos;
        if (pos < 0) break;
        ++current[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            current[static_cast<std::size_t>(i)] = current[static_cast<std::size_t>(i - 1)] + 1;
    }
}

} // namespace detail

/// Draws m size-k label subsets. Subsets are distinct whenever C(L,k) >= m;
/// otherwise all distinct subsets appear and the remainder repeats. A coverage
/// pass then swaps uncovered labels into the earliest-drawn subsets (replacing
/// the most-covered label, first slot on ties), so every label is covered
/// whenever m*k >= L.
inline std::vector<std::vector<int>> rakel_sample_subsets(int num_labels, int k, int m,
                                                          std::uint64_t seed) {
    if (k < 1 || k > num_labels) throw std::invalid_argument("rakel: k out of range");
    if (m < 1) throw std::invalid_argument("rakel: m must be >= 1");

    Rng rng(derive_seed(seed, seed_tag::subset_sampler));
    const unsigned long long distinct_cap =
        detail::binomial_capped(num_labels, k, std::max(10000ull, 4ull * static_cast<unsigned long long>(m)));

    auto draw_one = [&]() {
        std::vector<int> pool(static_cast<std::size_t>(num_labels));
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(num_labels - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::vector<int> subset(pool.begin(), pool.begin() + k);
        std::sort(subset.begin(), subset.end());
        return subset;
    };

    std::vector<std::vector<int>> subsets;
    if (distinct_cap <= std::max(10000ull, 4ull * static_cast<unsigned long long>(m))) {
        // small combination space: enumerate, shuffle, take distinct first
        std::vector<std::vector<int>> all;
        detail::enumerate_k_subsets(num_labels, k, all);
        rng.shuffle(all);
        const int distinct = static_cast<int>(std::min<std::size_t>(all.size(), static_cast<std::size_t>(m)));
        subsets.assign(all.begin(), all.begin() + distinct);
        while (static_cast<int>(subsets.size()) < m) // C(L,k) < m: repeats unavoidable
            subsets.push_back(all[rng.uniform_below(all.size())]);
    } else {
        std::set<std::vector<int>> seen;
        while (static_cast<int>(subsets.size()) < m) {
            auto subset = draw_one();
            if (seen.insert(subset).second) subsets.push_back(std::move(subset));
        }
    }

    // coverage pass
    std::vector<int> coverage(static_cast<std::size_t>(num_labels), 0);
    for (const auto& s : subsets)
        for (int l : s) ++coverage[static_cast<std::size_t>(l)];
    int scan_start = 0;
    for (int label = 0; label < num_labels; ++label) {
        if (coverage[static_cast<std::size_t>(label)] > 0) continue;
        for (int step = 0; step < m; ++step) {
            auto& subset = subsets[static_cast<std::size_t>((scan_start + step) % m)];
            int victim_slot = -1;
            for (std::size_t slot = 0; slot < subset.size(); ++slot) {
                const int covered = coverage[static_cast<std::size_t>(subset[slot])];
                if (covered > 1 &&
                    (victim_slot < 0 || covered > coverage[static_cast<std::size_t>(subset[static_cast<std::size_t>(victim_slot)])]))
                    victim_slot = static_cast<int>(slot);
            }
            if (victim_slot >= 0) {
                --coverage[static_cast<std::size_t>(subset[static_cast<std::size_t>(victim_slot)])];
                subset[static_cast<std::size_t>(victim_slot)] = label;
                ++coverage[static_cast<std::size_t>(label)];
                std::sort(subset.begin(), subset.end());
                scan_start = (scan_start + step + 1) % m;
                break;
            }
        }
    }
    return subsets;
}

/// RAkEL: an ensemble of Label Powerset models over random k-sized label
/// subsets. A label's score is the mean over subsets containing it; labels in
/// no subset fall back to their training prior.
class RakelModel final : public TerminalModel {
public:
    Eigen::MatrixXd predict(const FeatureMatrix& x) const override {
        if (full_lp_) return full_lp_->predict(x); // k=L, m=1 degenerates to plain LP

        const int n = x.rows();
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, num_labels_);
        std::vector<int> hits(static_cast<std::size_t>(num_labels_), 0);
        std::vector<Eigen::MatrixXd> per_subset(members_.size());
        detail::parallel_for(static_cast<int>(members_.size()), [&](int s) {
            per_subset[static_cast<std::size_t>(s)] = members_[static_cast<std::size_t>(s)]->predict(x);
        });
        for (std::size_t s = 0; s < members_.size(); ++s) {
            const auto& subset = subsets_[s];
            for (std::size_t local = 0; local < subset.size(); ++local) {
                sum.col(subset[local]) += per_subset[s].col(static_cast<Eigen::Index>(local));
                ++hits[static_cast<std::size_t>(subset[local])];
            }
        }
        Eigen::MatrixXd out(n, num_labels_);
        for (int j = 0; j < num_labels_; ++j) {
            if (hits[static_cast<std::size_t>(j)] > 0)
                out.col(j) = sum.col(j) / static_cast<double>(hits[static_cast<std::size_t>(j)]);
            else
                out.col(j).setConstant(priors_(j));
        }
        return out;
    }

    int target_columns() const override { return num_labels_; }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }

    friend std::unique_ptr<RakelModel> rakel_fit(const FeatureMatrix&, const LabelMatrix&,
                                                 const BinaryLearnerSpec&, int, int, std::uint64_t);

private:
    int num_labels_ = 0;
    std::vector<std::vector<int>> subsets_;
    std::vector<std::unique_ptr<LpModel>> members_;
    std::unique_ptr<LpModel> full_lp_;
    Eigen::VectorXd priors_;
};

inline std::unique_ptr<RakelModel> rakel_fit(const FeatureMatrix& x, const LabelMatrix& y,
                                             const BinaryLearnerSpec& base, int k, int m,
                                             std::uint64_t seed) {
    if (x.rows() < 1) throw std::invalid_argument("rakel_fit: empty training set");
    if (k < 1 || k > y.cols()) throw std::invalid_argument("rakel_fit: k out of range");
    if (m < 1) throw std::invalid_argument("rakel_fit: m must be >= 1");

    auto model = std::make_unique<RakelModel>();
    model->num_labels_ = y.cols();
    model->priors_ = y.positive_priors();

    if (k == y.cols() && m == 1) {
        // the single subset is the full label space: exactly plain LP
        model->full_lp_ = lp_fit(x, y, base, seed);
        model->subsets_.push_back([&] {
            std::vector<int> all(static_cast<std::size_t>(y.cols()));
            std::iota(all.begin(), all.end(), 0);
            return all;
        }());
        return model;
    }

    model->subsets_ = rakel_sample_subsets(y.cols(), k, m, seed);
    model->members_.resize(model->subsets_.size());
    detail::parallel_for(static_cast<int>(model->subsets_.size()), [&](int s) {
        const auto& subset = model->subsets_[static_cast<std::size_t>(s)];
        const LabelMatrix restricted = y.restrict_to(subset);
        model->members_[static_cast<std::size_t>(s)] =
            lp_fit(x, restricted, base, derive_seed(seed, static_cast<std::uint64_t>(s)));
    });
    return model;
}

} // namespace mlc
