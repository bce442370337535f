#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bures::detail {

// Runs body(i) for i in [0, n) on up to `threads` workers. Callers write
// results into slot i, so the merge order never depends on scheduling.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, const Body &body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                body(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

}  // namespace bures::detail
