#pragma once

#include <cstddef>
#include <functional>

namespace fxray {

/// Process-wide cap on worker threads (0 = hardware concurrency).
/// The CLI sets this from FINSLER_XRAY_THREADS.
void set_thread_cap(unsigned n);
unsigned thread_cap();

/// Runs fn(i) for i in [0, n) on up to thread_cap() threads with a static
/// partition. Results must be written to disjoint slots; the first
/// exception thrown by any worker is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace fxray
