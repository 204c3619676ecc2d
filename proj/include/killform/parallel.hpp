#pragma once

#include <cstddef>
#include <functional>

namespace killform {

/// Worker count used by the data-parallel loops. Defaults to
/// $KILLFORM_THREADS, falling back to the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(i, worker) for every i in [0, n). Work is handed out in
/// chunks from a shared counter; body must only touch per-worker state
/// or read-only data.
void parallel_for(std::size_t n, const std::function<void(std::size_t, unsigned)>& body);

}  // namespace killform
