#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace dirconv {

/// Runs fn(i) for i in [begin, end) on up to `threads` threads. Each index is
/// handled by exactly one thread, so results never depend on the thread count.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
    const std::size_t n = end > begin ? end - begin : 0;
    if (threads <= 1 || n < 64) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        // strided split keeps the expensive tail of a window spread across workers
        pool.emplace_back([&, w] {
            for (std::size_t i = begin + w; i < end; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace dirconv
