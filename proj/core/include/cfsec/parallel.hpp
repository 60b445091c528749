#pragma once

#include <cstddef>
#include <functional>

namespace cfsec {

/// Worker count: hardware concurrency, capped by the CFSEC_THREADS
/// environment variable when set.
std::size_t worker_count();

/// Runs fn(begin, end) over a partition of [0, n) on worker threads.
/// Chunk boundaries depend only on n and the worker count, so writes into
/// index-addressed buffers stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace cfsec
