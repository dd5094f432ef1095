// parallel.cpp: static block partitioning over std::thread

#include "dressed/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dressed {

std::size_t worker_count() {
    if (const char* env = std::getenv("DRESSED_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t workers = std::min(worker_count(), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::mutex guard;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;

    auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_block, begin, end);
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace dressed
