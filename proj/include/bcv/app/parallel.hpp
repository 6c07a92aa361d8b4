#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bcv::app {

/// hardware_concurrency, capped by BCV_THREADS when that is a positive integer.
std::size_t worker_count();

/// out[i] = fn(i) for i < n. Work is split across worker_count() threads;
/// the result order never depends on scheduling. The first exception (by
/// index) is rethrown after all workers finish.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min(worker_count(), n);
  auto run = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace bcv::app
