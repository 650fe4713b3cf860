#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tradenet {

/// Runs `body(begin, end)` over contiguous blocks of [0, n), one block per
/// worker. Results must be written to index-addressed slots so that the
/// outcome does not depend on the worker count; any exception is rethrown
/// on the calling thread.
inline void parallel_blocks(std::size_t n, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads <= 1 || n <= 1) {
        body(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                if (begin < end) {
                    body(begin, end);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

}  // namespace tradenet
