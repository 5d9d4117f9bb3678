#pragma once

#include <cstddef>
#include <functional>

namespace eland {

/// Worker count: hardware concurrency capped by ELAND_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eland
