#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mlc/core/rng.hpp"

namespace mlc {

/// Disjoint, exhaustive row-index folds. Fold contents are sorted; sizes
/// differ by at most one.
struct CVSplit {
    int num_folds = 0;
    std::vector<std::vector<int>> folds;
    std::uint64_t seed = 0;

    std::vector<int> train_indices(int fold) const {
        std::vector<int> out;
        for (int f = 0; f < num_folds; ++f)
            if (f != fold) out.insert(out.end(), folds[static_cast<std::size_t>(f)].begin(),
                                      folds[static_cast<std::size_t>(f)].end());
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::vector<int>& test_indices(int fold) const {
        return folds[static_cast<std::size_t>(fold)];
    }
};

/// Seeded permutation of {0..n-1} chopped into numCV contiguous chunks.
inline CVSplit kfold_split(int n, int num_cv, std::uint64_t seed) {
    if (num_cv < 2) throw std::invalid_argument("kfold_split: numCV must be at least 2");
    if (num_cv > n) throw std::invalid_argument("kfold_split: numCV exceeds the number of rows");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    rng.shuffle(perm);

    CVSplit split;
    split.num_folds = num_cv;
    split.seed = seed;
    split.folds.resize(static_cast<std::size_t>(num_cv));
    const int base = n / num_cv;
    const int extra = n % num_cv; // first `extra` folds get one more row
    int cursor = 0;
    for (int f = 0; f < num_cv; ++f) {
        const int size = base + (f < extra ? 1 : 0);
        auto& fold = split.folds[static_cast<std::size_t>(f)];
        fold.assign(perm.begin() + cursor, perm.begin() + cursor + size);
        std::sort(fold.begin(), fold.end());
        cursor += size;
    }
    return split;
}

} // namespace mlc
