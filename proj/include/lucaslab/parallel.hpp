#pragma once

#include <cstddef>
#include <functional>

namespace lucaslab {

/// Worker count: LUCASLAB_THREADS caps it, 0 or unset means auto
/// (hardware concurrency).
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) across workers. Each index is independent;
/// results must be written to preallocated slots so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lucaslab
