#pragma once

#include <cstddef>
#include <functional>

namespace germlab {

/// Worker count: GERMLAB_THREADS when set (clamped to [1, 256]), otherwise
/// hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, count) across workers. Work is split into
/// contiguous blocks; results must be written to per-index slots so the
/// outcome is schedule-independent. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace germlab
