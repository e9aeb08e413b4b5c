#pragma once

#include <cstdint>
#include <vector>

namespace mlc {

// splitmix64 finalizer, used for seed mixing and stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic sub-stream seed: hash of (seed, tag). Chain calls to hash a path.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag + 0x632be59bd9b4e019ull));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

// Fixed seed-stream tags so independent consumers of one node seed never collide.
namespace seed_tag {
inline constexpr std::uint64_t kmeans = 0x6b6d65616e730000ull;
inline constexpr std::uint64_t chain_order = 0x636861696e6f7264ull;
inline constexpr std::uint64_t subset_sampler = 0x7375627365740000ull;
inline constexpr std::uint64_t cv_split = 0x637673706c697400ull;
inline constexpr std::uint64_t fold = 0x666f6c6400000000ull;
inline constexpr std::uint64_t scut_tune = 0x7363757474756e65ull;
inline constexpr std::uint64_t svd_init = 0x737664696e697400ull;
} // namespace seed_tag

/// xoshiro256** kept in-repo so results do not depend on any
/// standard-library distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ull;
            word = mix64(s);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound). bound must be >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // multiply-shift map of a 64-bit draw onto [0,bound)
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform double in [0, 1).
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

} // namespace mlc
