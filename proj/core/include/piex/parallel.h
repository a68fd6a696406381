#ifndef PIEX_PARALLEL_H_
#define PIEX_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace piex {

inline unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads, one contiguous block
// per thread, and concatenates the per-index results in index order.
// The first exception thrown by any worker is rethrown.
template <typename Fn>
auto parallel_collect(std::size_t n, unsigned jobs, Fn fn) -> decltype(fn(std::size_t{})) {
    using Result = decltype(fn(std::size_t{}));
    Result out;
    if (n == 0) return out;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            auto part = fn(i);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    std::vector<Result> parts(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    std::size_t block = (n + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t] {
            try {
                std::size_t begin = t * block;
                std::size_t end = std::min(n, begin + block);
                for (std::size_t i = begin; i < end; ++i) {
                    auto part = fn(i);
                    parts[t].insert(parts[t].end(), part.begin(), part.end());
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace piex

#endif  // PIEX_PARALLEL_H_
