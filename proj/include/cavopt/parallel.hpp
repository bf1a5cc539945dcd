#ifndef CAVOPT_PARALLEL_HPP
#define CAVOPT_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cavopt {

// Index-ordered parallel map: body(i) runs on a small worker pool, results
// land in whatever slot the body writes, so output ordering is by index
// regardless of completion order.
template <class F>
void parallel_for(std::size_t n, int workers, F&& body) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(workers, static_cast<int>(n));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

}  // namespace cavopt

#endif
