#pragma once

#include <cstddef>
#include <functional>

namespace bipot
{

/// Number of workers used by parallel_for. Defaults to 1.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Split [0, n) into contiguous static chunks, one per worker, and run
/// body(begin, end) on each. Chunk boundaries depend only on n and the worker
/// count; callers merge results in index order so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace bipot
