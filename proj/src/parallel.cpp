#include "bellml/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace bellml {

namespace {

std::size_t worker_count() {
    if (const char* env = std::getenv("BELLML_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const std::size_t chunk = std::max<std::size_t>(1, n / (workers * 8));

    auto body = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t start = next.fetch_add(chunk);
            if (start >= n) break;
            const std::size_t end = std::min(n, start + chunk);
            try {
                for (std::size_t i = start; i < end; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace bellml
