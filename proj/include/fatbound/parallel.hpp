#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fatbound::detail {

/// Runs body(begin, end) over [0, n) split into `jobs` contiguous chunks.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || n < 2 * workers) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace fatbound::detail
