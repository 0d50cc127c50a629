#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace qtor {

/// Worker count: `requested` if nonzero, else hardware concurrency, capped
/// by the QTOR_THREADS environment variable when set.
inline unsigned thread_budget(unsigned requested = 0) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QTOR_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && unsigned(cap) < n) n = unsigned(cap);
    }
    return n;
}

/// Evaluate f(0..n-1) on a small worker pool; results land in slot order, so
/// downstream consumers stay deterministic regardless of scheduling.
template <class T, class F>
std::vector<T> parallel_map(size_t n, const F& f, unsigned threads = 0) {
    std::vector<T> results(n);
    if (n == 0) return results;
    unsigned workers = std::min<size_t>(thread_budget(threads), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) results[i] = f(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) results[i] = f(i);
        });
    for (auto& t : pool) t.join();
    return results;
}

} // namespace qtor
