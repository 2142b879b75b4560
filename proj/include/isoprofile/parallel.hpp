#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "isoprofile/skeleton.hpp"

namespace isoprofile {

// Computes fn(worker_complex, i) for every i in [0, n) and returns the
// results in index order. Each worker gets its own copy of the oracle. If
// some calls throw, the exception of the smallest failing index is rethrown,
// so the outcome does not depend on scheduling.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t n, unsigned workers,
                                 const CellComplex& complex, Fn&& fn) {
  std::vector<std::optional<Result>> slots(n);
  if (workers <= 1 || n <= 1) {
    std::vector<Result> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(complex, i));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = n;
  std::exception_ptr error;

  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    threads.emplace_back([&] {
      const CellComplex local = complex.for_worker();
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          slots[i].emplace(fn(local, i));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<Result> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace isoprofile
