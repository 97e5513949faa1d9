#pragma once

#include <cstddef>
#include <functional>

namespace contourforge::runtime {

/// Upper bound on worker threads for embarrassingly parallel sweeps
/// (ladder entries, property batches). 0 means hardware concurrency.
void set_thread_cap(std::size_t cap);
std::size_t thread_budget();

/// Run fn(0..n-1), at most thread_budget() in flight. Each entry is computed
/// independently and written to its own slot, so results do not depend on
/// scheduling or the thread budget.
void parallel_for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace contourforge::runtime
