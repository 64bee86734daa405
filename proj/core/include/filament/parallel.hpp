#pragma once

#include <cstddef>
#include <functional>

namespace filament {

/// Worker count: hardware concurrency, capped by FILAMENT_LAB_THREADS.
std::size_t worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count; callers write results by index so
/// output order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace filament
