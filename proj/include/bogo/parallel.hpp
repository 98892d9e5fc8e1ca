#ifndef BOGO_PARALLEL_HPP
#define BOGO_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace bogo {

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// result is bitwise independent of the thread count; reductions happen
// afterwards in fixed index order.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min<int>(threads, static_cast<int>(std::thread::hardware_concurrency()));
    if (nt < 1) nt = 1;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace bogo

#endif
