#pragma once

#include <functional>

namespace oedg {

/// Number of workers used by parallel loops. Reads OEDG_THREADS once (values
/// < 1 are clamped to 1); falls back to the hardware concurrency.
int worker_count();

/// Runs body(begin, end) over [0, n) split into fixed-size chunks. Chunk
/// boundaries do not depend on the worker count, so per-chunk partial results
/// combined in chunk order give bit-identical totals for any OEDG_THREADS.
void parallel_for(long long n, const std::function<void(long long, long long)>& body);

/// Deterministic parallel sum: chunk_sum(begin, end) is evaluated per fixed
/// chunk and the partials are added in chunk order.
double ordered_sum(long long n, const std::function<double(long long, long long)>& chunk_sum);

/// Deterministic parallel max (max is order-insensitive, but this keeps the
/// chunked traversal shape of ordered_sum).
double chunked_max(long long n, const std::function<double(long long, long long)>& chunk_max);

}  // namespace oedg
