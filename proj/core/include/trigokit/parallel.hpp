#pragma once

#include <cstddef>
#include <functional>

namespace trigokit {

// Worker cap: TRIGOKIT_THREADS if set (clamped to [1, hardware]), else the
// hardware concurrency.
int worker_count();

// Chunked parallel loop over [0, n); fn(begin, end) runs on disjoint ranges.
// Falls back to a plain call when one worker suffices.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace trigokit
