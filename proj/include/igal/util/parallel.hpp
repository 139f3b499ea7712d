#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace igal::util {

inline constexpr const char* kThreadsEnv = "IGAL_THREADS";

/// Worker count from IGAL_THREADS (0 or unset = hardware concurrency).
inline unsigned thread_count() {
    unsigned n = 0;
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            n = static_cast<unsigned>(std::max(0, std::stoi(env)));
        } catch (const std::exception&) {
            n = 0;
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

/// Runs f(i) for i in [0, n) over contiguous chunks. Each index is handled by exactly one
/// worker, so writes to per-index storage need no synchronisation. The first exception
/// thrown by any worker is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, F&& f, unsigned threads = thread_count()) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace igal::util
