#pragma once

#include <cstddef>
#include <functional>

namespace hofloq {

/// Worker count: FLOQ_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once, so results
/// written to per-index slots are independent of the thread count. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hofloq
