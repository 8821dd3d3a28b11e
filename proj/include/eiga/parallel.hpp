#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace eiga {

// Runs fn(i) for i in [begin, end) across hardware threads. Each index is
// processed exactly once and results must be written to disjoint slots, so
// the outcome is independent of scheduling.
inline void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    int threads = std::max(1, std::min<int>(static_cast<int>(hw), n));
    if (threads == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int lo = begin + t * chunk;
        int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace eiga
