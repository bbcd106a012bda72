#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cpkit {

// Worker cap: CPKIT_THREADS if set (>=1), else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("CPKIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Static-partition parallel loop over [0, count). The callable must write
// only to per-index slots; callers then reduce sequentially in index order,
// which keeps floating-point results identical for any thread count.
template <class F>
void parallel_for(std::int64_t count, F&& fn) {
    if (count <= 0) return;
    const int threads = static_cast<int>(std::min<std::int64_t>(worker_count(), count));
    if (threads <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const std::int64_t lo = count * t / threads;
        const std::int64_t hi = count * (t + 1) / threads;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cpkit
