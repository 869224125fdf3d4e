#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace weyl {

/// Number of worker threads to use when the caller passes 0.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `work(slab)` for every slab in [0, slabs) on up to `threads` workers
/// and returns the results indexed by slab. Slabs are dealt round-robin, so
/// the result vector (and anything merged from it in index order) does not
/// depend on the thread count.
template <class Result, class Work>
std::vector<Result> map_slabs(std::size_t slabs, unsigned threads, Work&& work) {
  std::vector<Result> results(slabs);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), slabs));
  if (workers <= 1) {
    for (std::size_t s = 0; s < slabs; ++s) results[s] = work(s);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t s = w; s < slabs; s += workers) results[s] = work(s);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace weyl
