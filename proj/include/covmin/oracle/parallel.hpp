#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace covmin {

/// Evaluates fn(0..n-1) on up to `jobs` threads. Results are stored by index,
/// so the output never depends on scheduling; the exception of the smallest
/// failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, unsigned jobs, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using T = decltype(fn(std::size_t{}));
    std::vector<T> out(n);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k)
            out[k] = fn(k);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                out[k] = fn(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace covmin
