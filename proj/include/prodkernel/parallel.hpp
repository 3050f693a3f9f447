#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace prodkernel {

/// Worker count used by batch evaluation; 1 means serial.
std::size_t num_threads() noexcept;
void set_num_threads(std::size_t n) noexcept;

/// Calls body(i) for i in [0, n). Iterations must be independent; each index
/// is handled by exactly one thread so results do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min(num_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
}

}  // namespace prodkernel
