#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace gapqp {

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. Results depend only on the index, never on
/// which worker ran it. The first exception thrown by any task is rethrown.
template <class Fn>
auto run_ensemble(std::size_t count, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<Result> results(count);
    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads == 0 ? 1u : threads, unsigned(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            results[i] = fn(i);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    pool.clear();  // joins
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

}  // namespace gapqp
