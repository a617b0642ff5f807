#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace coalhaus {

/** Worker count actually used: COALHAUS_THREADS overrides the request, zero
 *  or negative values fall back to 1, and hardware concurrency caps it. */
inline int resolve_threads(int requested) {
    if (const char* env = std::getenv("COALHAUS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0') requested = static_cast<int>(v);
    }
    if (requested < 1) requested = 1;
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && requested > static_cast<int>(hw)) requested = static_cast<int>(hw);
    return requested;
}

/** Runs body(0..count-1), possibly across threads. Each index must be an
 *  independent unit (replicates with their own RNG streams); outputs go to
 *  preallocated per-index slots so the schedule cannot affect results. */
inline void parallel_for(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto work = [&]() {
        while (true) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace coalhaus
