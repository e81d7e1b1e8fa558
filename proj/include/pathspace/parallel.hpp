#pragma once

#include <cstddef>
#include <functional>

namespace pathspace {

/// Worker count: PATHSPACE_THREADS when set (>= 1), else the hardware
/// concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// writes its own output slot, so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pathspace
