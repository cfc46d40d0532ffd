// SPDX-License-Identifier: Apache-2.0
#include "kinetica/threading.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace kinetica {

namespace {

int g_max_threads = 0;  // 0 = not yet initialized

int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

void set_max_threads(int n) { g_max_threads = n < 1 ? 1 : n; }

int max_threads() {
    if (g_max_threads == 0) g_max_threads = default_threads();
    return g_max_threads;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

void parallel_for_chunked(std::size_t n,
                          const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    // Chunk boundaries depend only on n, never on the thread count, so any
    // reduction combined in chunk order is bitwise reproducible.
    const int chunks = kReductionChunks;
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
        const std::size_t begin = n * c / static_cast<std::size_t>(chunks);
        const std::size_t end = n * (c + 1) / static_cast<std::size_t>(chunks);
        if (begin < end) fn(static_cast<int>(c), begin, end);
    });
}

}  // namespace kinetica
