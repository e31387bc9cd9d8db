#pragma once

#include <cstddef>
#include <functional>

namespace depcor {

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Work is handed out through an atomic counter, so callers must write
/// results into per-index slots. If any body throws, the exception from the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace depcor
