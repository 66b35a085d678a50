#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace cogspike {

// Runs fn(0), ..., fn(n-1) on a worker pool and collects the results by
// index, so the thread count can never reorder or perturb them. threads <= 0
// picks one worker per core. The result type must be default-constructible.
template <typename Fn>
auto parallel_map(int n, int threads, Fn&& fn) {
    using T = std::invoke_result_t<Fn&, int>;
    std::vector<T> out(static_cast<std::size_t>(std::max(n, 0)));
    if (n <= 0) return out;

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    out[static_cast<std::size_t>(i)] = fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace cogspike
