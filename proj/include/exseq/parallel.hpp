#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exseq {

// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and returns the
// results in index order. The first exception (by index) is rethrown.
template <typename Fn>
auto parallel_map(size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(size_t{}))> {
  using T = decltype(fn(size_t{}));
  std::vector<T> out(count);
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t nthreads = std::min<size_t>(static_cast<size_t>(jobs), count);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace exseq
