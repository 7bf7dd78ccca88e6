#pragma once

#include <cstddef>
#include <functional>

namespace gsgp {

/// Worker-thread cap from the GSGP_THREADS environment variable.
/// 0 or unset means hardware concurrency.
std::size_t worker_thread_count();

/// Runs fn(i) for i in [0, n) on up to worker_thread_count() threads.
/// fn must be pure with respect to shared state except its own index slot;
/// results are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace gsgp
