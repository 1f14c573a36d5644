#include "oedg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

namespace oedg {

namespace {

constexpr long long kChunk = 4096;

int read_worker_count() {
  if (const char* env = std::getenv("OEDG_THREADS")) {
    int v = std::atoi(env);
    return std::max(1, v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

long long chunk_count(long long n) { return (n + kChunk - 1) / kChunk; }

// Dispatches chunks [0, n_chunks) to per_chunk(c) using worker_count() threads.
void run_chunks(long long n_chunks, const std::function<void(long long)>& per_chunk) {
  int workers = std::min<long long>(worker_count(), n_chunks);
  if (workers <= 1) {
    for (long long c = 0; c < n_chunks; ++c) per_chunk(c);
    return;
  }
  std::atomic<long long> next{0};
  auto drain = [&] {
    for (;;) {
      long long c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      per_chunk(c);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

}  // namespace

int worker_count() {
  static const int n = read_worker_count();
  return n;
}

void parallel_for(long long n, const std::function<void(long long, long long)>& body) {
  if (n <= 0) return;
  long long chunks = chunk_count(n);
  run_chunks(chunks, [&](long long c) {
    long long begin = c * kChunk;
    long long end = std::min(n, begin + kChunk);
    body(begin, end);
  });
}

double ordered_sum(long long n, const std::function<double(long long, long long)>& chunk_sum) {
  if (n <= 0) return 0.0;
  long long chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);
  run_chunks(chunks, [&](long long c) {
    long long begin = c * kChunk;
    long long end = std::min(n, begin + kChunk);
    partial[c] = chunk_sum(begin, end);
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double chunked_max(long long n, const std::function<double(long long, long long)>& chunk_max) {
  if (n <= 0) return -std::numeric_limits<double>::infinity();
  long long chunks = chunk_count(n);
  std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
  run_chunks(chunks, [&](long long c) {
    long long begin = c * kChunk;
    long long end = std::min(n, begin + kChunk);
    partial[c] = chunk_max(begin, end);
  });
  double m = partial[0];
  for (double p : partial) m = std::max(m, p);
  return m;
}

}  // namespace oedg
