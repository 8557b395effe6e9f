#ifndef HETNET_PARALLEL_HPP
#define HETNET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hetnet {

/// Worker count: HETNET_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index runs exactly once; callers
/// write results into per-index slots so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hetnet

#endif  // HETNET_PARALLEL_HPP
