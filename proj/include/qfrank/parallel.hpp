#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qfrank {

/// Splits [begin, end) into at most `workers` contiguous chunks and runs
/// fn(chunk_begin, chunk_end, chunk_index) on each. Chunk boundaries depend
/// only on the range and worker count; callers merge results by chunk index.
/// The first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_chunks(std::int64_t begin, std::int64_t end, unsigned workers, Fn&& fn) {
  const std::int64_t total = std::max<std::int64_t>(0, end - begin);
  const std::int64_t chunks =
      std::max<std::int64_t>(1, std::min<std::int64_t>(std::max(workers, 1u), total));
  if (chunks == 1) {
    fn(begin, end, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(chunks));
    for (std::int64_t i = 0; i < chunks; ++i) {
      const std::int64_t lo = begin + total * i / chunks;
      const std::int64_t hi = begin + total * (i + 1) / chunks;
      threads.emplace_back([&, lo, hi, i] {
        try {
          fn(lo, hi, static_cast<std::size_t>(i));
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qfrank
