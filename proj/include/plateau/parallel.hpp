#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace plateau {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Splits [0, n) into contiguous chunks, one per worker. fn(worker, begin, end).
// Chunk boundaries depend only on n and the worker count, so per-worker
// accumulators merged in worker order give deterministic results.
template <class Fn>
void parallel_chunks(std::int64_t n, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, n)));
    if (workers == 1) {
        fn(0u, std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::int64_t step = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::int64_t b = std::min<std::int64_t>(n, step * w), e = std::min<std::int64_t>(n, b + step);
        pool.emplace_back([&, w, b, e] {
            try {
                fn(w, b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& ep : errors)
        if (ep) std::rethrow_exception(ep);
}

} // namespace plateau
