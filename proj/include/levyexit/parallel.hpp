#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace levyexit {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) across threads. Work items must be independent
// and write-disjoint; results are then identical for any thread count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
    const int nt = std::min<std::size_t>(resolve_threads(threads), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Maps fn over chunk indices, collecting results in chunk order so that the
// caller's sequential combine is independent of scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n_chunks, int threads,
                            const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n_chunks);
    parallel_for(n_chunks, threads, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace levyexit
