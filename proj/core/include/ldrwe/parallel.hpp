#ifndef LDRWE_PARALLEL_HPP
#define LDRWE_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ldrwe {

/// Worker count: min(hardware, 8), capped by the LDRWE_THREADS env var.
inline int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
    if (const char* env = std::getenv("LDRWE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) n = static_cast<int>(std::min<long>(v, 64));
    }
    return n;
}

// Index-based parallel loop. Each index is processed exactly once and any
// output must be written to a slot owned by that index, so the result is
// independent of the worker count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(workers)) {
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace ldrwe

#endif // LDRWE_PARALLEL_HPP
