#pragma once

#include <cstddef>
#include <functional>

namespace npsobol {

/// Worker count from NPSOBOL_THREADS; 0 or unset means hardware concurrency.
unsigned default_thread_count();

/// Calls task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write to disjoint slots. The first exception thrown is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

} // namespace npsobol
