#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gpdwell {

/// Positive value of GPDWELL_THREADS, or 0 when unset or unparsable.
unsigned worker_cap();

/// Worker cap from GPDWELL_THREADS, else the hardware concurrency (at least 1).
unsigned default_worker_count();

/// max(1, requested), limited by GPDWELL_THREADS when set.
unsigned capped_workers(unsigned requested);

/**
 * Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
 * the results in index order. The first exception thrown by any call is
 * rethrown after all workers have joined.
 */
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    results[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace gpdwell
