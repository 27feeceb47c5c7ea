#include "sfl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sfl {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SFL_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

namespace {

void run_workers(std::uint64_t count, const std::function<void(std::atomic<std::uint64_t>&)>& body) {
  const int workers = static_cast<int>(std::min<std::uint64_t>(worker_count(), count));
  std::atomic<std::uint64_t> next{0};
  if (workers <= 1) {
    body(next);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        body(next);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::optional<std::uint64_t> first_match(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred) {
  std::atomic<std::uint64_t> best{count};
  run_workers(count, [&](std::atomic<std::uint64_t>& next) {
    for (;;) {
      const std::uint64_t i = next++;
      if (i >= count || i >= best.load()) return;
      if (pred(i)) {
        std::uint64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  });
  if (best.load() == count) return std::nullopt;
  return best.load();
}

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& fn) {
  run_workers(count, [&](std::atomic<std::uint64_t>& next) {
    for (std::uint64_t i = next++; i < count; i = next++) fn(i);
  });
}

}  // namespace sfl
