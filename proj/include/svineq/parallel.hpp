#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace svineq {

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Work is assigned
/// round-robin; if any call throws, the exception of the lowest failing index
/// is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

/// Thread cap from SVINEQ_THREADS, or `fallback` when unset or invalid.
inline unsigned threads_from_env(unsigned fallback = 1) {
    const char* raw = std::getenv("SVINEQ_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    try {
        long v = std::stol(raw);
        return v >= 1 ? static_cast<unsigned>(v) : fallback;
    } catch (const std::exception&) {
        return fallback;
    }
}

} // namespace svineq
