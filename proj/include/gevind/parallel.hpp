#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gevind {

inline std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

/// Run fn(i) for i in [begin, end) on `workers` threads (0 = hardware
/// concurrency), statically chunked. Work items must write to disjoint
/// state; the first exception, if any, is rethrown after all threads join.
/// Results are index-addressed, so output never depends on the schedule.
inline void parallel_for(std::size_t begin, std::size_t end, std::size_t workers,
                         const std::function<void(std::size_t)>& fn) {
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0) return;
    workers = std::min(resolve_workers(workers), total);
    if (workers == 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gevind
