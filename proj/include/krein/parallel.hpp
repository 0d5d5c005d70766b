#pragma once

#include <cstddef>
#include <functional>

namespace krein {

// Worker count for grid evaluations. Read from KREIN_NUM_THREADS, falling back to
// the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count). Every index runs even if some throw; the exception
// from the lowest failing index is rethrown so results stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace krein
