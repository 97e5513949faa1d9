#include "contourforge/runtime.hpp"

#include <atomic>
#include <future>
#include <thread>
#include <vector>

namespace contourforge::runtime {

namespace {

std::atomic<std::size_t> g_thread_cap{0};  // 0 = hardware concurrency

}  // namespace

void set_thread_cap(std::size_t cap) { g_thread_cap.store(cap); }

std::size_t thread_budget() {
    std::size_t cap = g_thread_cap.load();
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (cap == 0) return hw;
    return cap < hw ? cap : hw;
}

void parallel_for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t budget = thread_budget();
    if (budget <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // Each index is an independent unit of work; results are written to
    // per-index slots by the caller, so scheduling cannot change any value.
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    const std::size_t nworkers = budget < n ? budget : n;
    workers.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        }));
    }
    for (auto& f : workers) f.get();
}

}  // namespace contourforge::runtime
