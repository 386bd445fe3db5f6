#pragma once

#include <cstddef>
#include <functional>

namespace sqw {

/// Worker count from SQW_THREADS, else hardware_concurrency, at least 1.
unsigned default_thread_count();

/// Runs body(begin, end) over contiguous blocks of [0, n). Block boundaries
/// depend only on n and threads, and each index is visited exactly once, so
/// a body writing disjoint outputs gives thread-count independent results.
/// The first exception thrown by any block is rethrown after all join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace sqw
