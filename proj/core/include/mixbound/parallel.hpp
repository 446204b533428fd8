#pragma once

#include <cstddef>
#include <functional>

namespace mixbound {

/// Worker count: MIXBOUND_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, count) across thread_count() workers, each on a
/// contiguous block. Rethrows the first exception after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mixbound
