#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <algorithm>
#include <thread>
#include <vector>

namespace endim {

void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, n); results must be written to per-index slots.
// The first exception (lowest index) is rethrown after all workers join.
namespace detail {
inline thread_local bool in_worker = false;
}

// Nested calls from inside a worker run sequentially.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned T = detail::in_worker ? 1 : static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (T <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(n);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
        pool.emplace_back([&] {
            detail::in_worker = true;
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace endim
