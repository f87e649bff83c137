#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace dol {

// Runs per-agent work either inline or on a batch of threads over
// contiguous index ranges. Callers guarantee that f(i) writes only to
// agent-i-owned slots, so the result never depends on scheduling; joining
// the batch is the synchronization barrier between round phases.
class Executor {
 public:
  explicit Executor(int threads) : threads_(std::max(1, threads)) {}

  static Executor sequential() { return Executor(1); }

  int threads() const { return threads_; }

  template <typename F>
  void for_each(int n, F&& f) const {
    if (threads_ == 1 || n <= 1) {
      for (int i = 0; i < n; ++i) f(i);
      return;
    }
    const int workers = std::min(threads_, n);
    const int chunk = (n + workers - 1) / workers;
    std::vector<std::thread> batch;
    batch.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      batch.emplace_back([lo, hi, &f] {
        for (int i = lo; i < hi; ++i) f(i);
      });
    }
    for (std::thread& t : batch) t.join();
  }

 private:
  int threads_;
};

}  // namespace dol
