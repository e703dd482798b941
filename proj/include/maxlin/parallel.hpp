#pragma once

#include <cstddef>
#include <functional>

namespace maxlin {

/// Thread budget: MAXLIN_THREADS if set (min 1), else hardware concurrency.
unsigned thread_budget();

/// Runs fn(begin, end) over a partition of [0, n) across the thread budget.
/// Work must be index-addressed so results are schedule-independent.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace maxlin
