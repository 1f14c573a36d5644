#pragma once

#include <atomic>
#include <mutex>
#include <sstream>
#include <string>

#include "oedg/dg_solution.hpp"

namespace oedg::internal {

// First-error capture for loops that may run on worker threads (exceptions
// must not escape a std::thread). The first recorded message wins; rethrow_if
// turns it into a SolverAbort on the calling thread.
class AbortCollector {
 public:
  void record(const std::string& msg) {
    std::lock_guard<std::mutex> g(mu_);
    if (msg_.empty()) msg_ = msg;
    failed_.store(true, std::memory_order_release);
  }
  bool failed() const { return failed_.load(std::memory_order_acquire); }
  void rethrow_if() {
    if (failed()) {
      std::lock_guard<std::mutex> g(mu_);
      throw SolverAbort(msg_);
    }
  }

 private:
  std::mutex mu_;
  std::string msg_;
  std::atomic<bool> failed_{false};
};

inline std::string cell_context_1d(int cell, double x, double t, const char* what) {
  std::ostringstream os;
  os << what << " at cell " << cell << ", x = " << x << ", t = " << t;
  return os.str();
}

inline std::string cell_context_2d(int i, int j, double x, double y, double t, const char* what) {
  std::ostringstream os;
  os << what << " at cell (" << i << ", " << j << "), x = " << x << ", y = " << y
     << ", t = " << t;
  return os.str();
}

}  // namespace oedg::internal
