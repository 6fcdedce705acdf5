#pragma once

#include <cstddef>
#include <functional>

namespace poslab {

/// Worker count: POSLAB_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Runs task(i) for every i in [0, count). Each task must write only to its
/// own slot; callers reduce the slots in index order, which keeps results
/// independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace poslab
