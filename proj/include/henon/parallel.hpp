#pragma once

#include <cstddef>
#include <functional>

namespace henon {

// HENON_THREADS caps the worker count; defaults to hardware concurrency
unsigned worker_count();

// calls fn(i) for i in [0, n); exceptions from workers are rethrown (first one wins)
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace henon
