// parallel.hpp: index-parallel loop capped by DRESSED_THREADS

#pragma once

#include <cstddef>
#include <functional>

namespace dressed {

// Worker count: DRESSED_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker and
// writes only its own output slot, so results do not depend on the thread
// count. The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace dressed
