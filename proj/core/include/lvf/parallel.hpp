#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lvf {

/// Runs body(i) for i in [0, n) across `threads` workers. threads <= 1 runs
/// inline. Work items must be independent; callers reduce results
/// sequentially afterwards so set-valued outputs stay order-deterministic.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, unsigned(n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lvf
