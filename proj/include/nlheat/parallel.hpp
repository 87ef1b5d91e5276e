#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nlheat {

/// Worker cap from NONLOCAL_HEAT_THREADS: 0 or unparsable means sequential,
/// unset means hardware concurrency.
std::size_t thread_budget();

/// Runs task(0..count-1) on at most `threads` workers (0 or 1: inline).
/// Tasks must write only to their own slot. The first exception thrown by
/// any task is rethrown after all workers join.
template <typename Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    const std::size_t workers = threads < count ? threads : count;
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    task(i);
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

}  // namespace nlheat
