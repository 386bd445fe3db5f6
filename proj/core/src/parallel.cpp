#include "sqw/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sqw {

unsigned default_thread_count() {
    if (const char* env = std::getenv("SQW_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers == 1) {
        body(0, n);
        return;
    }
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = n * w / workers;
        const std::size_t e = n * (w + 1) / workers;
        pool.emplace_back([&, b, e] {
            try {
                body(b, e);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace sqw
