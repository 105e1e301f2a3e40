#pragma once

#include <cstddef>
#include <functional>

namespace mqv {

/// Number of worker threads to use when a caller passes 0.
std::size_t default_workers();

/// Runs body(i) for i in [0, count) on up to `workers` threads.
///
/// Indices are handed out dynamically; callers write results into slot i so the
/// outcome never depends on scheduling. The first exception thrown by any body
/// is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace mqv
