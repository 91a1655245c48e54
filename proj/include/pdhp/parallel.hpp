#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pdhp {

// Chunked index loop: fn(i) for i in [0, n), split over `threads` threads.
// Callers guarantee fn(i) touches only slot-i state, so the chunking cannot
// change results.
inline void parallel_for_index(std::size_t n, std::size_t threads,
                               const std::function<void(std::size_t)>& fn) {
    threads = std::clamp<std::size_t>(threads, 1, n == 0 ? 1 : n);
    auto run = [&fn](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    };
    if (threads <= 1) {
        run(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 1; t < threads; ++t) {
        const std::size_t begin = std::min(n, t * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back(run, begin, end);
    }
    run(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
}

} // namespace pdhp
