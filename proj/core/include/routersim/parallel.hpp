// parallel.hpp: fixed-size worker pool for embarrassingly parallel sweeps

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace routersim {

// Worker count from ROUTER_SIM_THREADS, falling back to the logical core count.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = worker_count()).
// Each index is visited exactly once; the first exception thrown is rethrown
// after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace routersim
