#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace sofic {

// Worker cap: SOFICLAB_THREADS when set and positive, else hardware count.
inline int thread_cap() {
  if (const char* env = std::getenv("SOFICLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Evaluate f(i) for i in [0, n); each index owns its result slot, so the
// output is identical regardless of scheduling or worker count. The first
// exception (in index order of the worker that caught it) is rethrown after
// all workers finish.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& f) {
  std::vector<T> out(n);
  const int workers =
      static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(thread_cap())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < n; i += workers) out[i] = f(i);
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace sofic
