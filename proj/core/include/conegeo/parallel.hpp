#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace conegeo {

/// Chunked parallel loop over [0, n). Results must be written to
/// caller-owned per-index storage; reductions stay deterministic because
/// the caller sums sequentially afterwards.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace conegeo
