#pragma once

#include <cstddef>
#include <functional>

namespace gexlab {

/// Worker-pool size: GEXLAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t workerCount();

/// Runs body(i) for i in [0, count) on up to `workers` threads. Every index
/// runs even if some throw; afterwards the exception from the lowest failing
/// index is rethrown.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& body,
                 std::size_t workers = workerCount());

}  // namespace gexlab
