#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace l2switch {

inline int default_workers() {
    unsigned int hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Applies f to 0..n-1 on a worker pool; results land at their index, so the
// output does not depend on the worker count.
template <typename R, typename F>
std::vector<R> parallel_map(size_t n, int workers, F f) {
    std::vector<R> out(n);
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<size_t> next{0};
    auto body = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) break;
            out[i] = f(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<size_t>(static_cast<size_t>(workers), n);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    return out;
}

template <typename F>
void parallel_for(size_t n, int workers, F f) {
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto body = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) break;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<size_t>(static_cast<size_t>(workers), n);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

} // namespace l2switch
