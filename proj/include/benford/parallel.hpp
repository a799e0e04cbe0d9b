#pragma once

// Index-parallel loops whose results are merged by index, so the outcome does
// not depend on the thread count. BENFORD_FOURIER_THREADS caps the workers.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace benford {

inline unsigned max_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BENFORD_FOURIER_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            // malformed values are ignored
        }
    }
    return n;
}

/// Calls fn(i) for i in [0, count). Work is split into contiguous blocks.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(max_threads(), count));
    if (workers <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(count, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace benford
