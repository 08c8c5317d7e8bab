#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lqg {

inline int worker_count() {
    if (const char* env = std::getenv("LQG_THREADS")) {
        const int k = std::atoi(env);
        if (k >= 1) return k;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// static block partition; fn(i) must only write state owned by index i,
// so results are identical for any worker count
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t k = static_cast<std::size_t>(workers);
    for (std::size_t w = 0; w < k; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += k) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace lqg
