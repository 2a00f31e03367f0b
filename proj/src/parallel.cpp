#include "th/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace th {

int worker_count() {
    static const int count = [] {
        if (const char* env = std::getenv("TORUS_HARMONICS_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
            return 1;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return count;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    const int workers = worker_count();
    if (workers == 1 || n < 256) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::int64_t block = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * block;
        const std::int64_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace th
