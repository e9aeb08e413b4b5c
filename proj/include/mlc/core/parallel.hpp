#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace mlc {

namespace detail {
inline std::atomic<int>& thread_count_storage() {
    static std::atomic<int> count{1};
    return count;
}
inline bool& inside_parallel_region() {
    thread_local bool inside = false;
    return inside;
}
} // namespace detail

inline int num_threads() { return detail::thread_count_storage().load(); }

/// Global worker budget. Results are identical at any setting: parallel tasks
/// are independent and write to disjoint, index-addressed slots.
inline void set_num_threads(int n) { detail::thread_count_storage().store(n < 1 ? 1 : n); }

namespace detail {

// Runs fn(i) for i in [0,n). Only the outermost call parallelizes; nested
// calls run inline so worker counts stay bounded.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(num_threads(), n);
    if (workers <= 1 || inside_parallel_region()) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto run_chunk = [&](int begin, int end) {
        inside_parallel_region() = true;
        try {
            for (int i = begin; i < end; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
        inside_parallel_region() = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        const int begin = static_cast<int>(static_cast<long long>(n) * t / workers);
        const int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / workers);
        pool.emplace_back(run_chunk, begin, end);
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail
} // namespace mlc
