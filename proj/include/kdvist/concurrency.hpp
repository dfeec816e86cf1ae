#pragma once

#include <kdvist/types.hpp>

#include <functional>

namespace kdvist {

//! 0 or negative -> hardware concurrency (at least 1)
int resolve_threads(int requested);

//! Runs fn(i) for i in [0, n) on `threads` workers with a strided static
//! partition. Each index is processed exactly once, so writes keyed by i
//! give results independent of the worker count.
void parallel_for(Index n, int threads, const std::function<void(Index)>& fn);

} // namespace kdvist
