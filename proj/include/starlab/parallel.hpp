#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace starlab {

/// Split [0, count) into at most `jobs` contiguous chunks and run
/// `body(begin, end, chunk)` on each. The first exception thrown by any chunk
/// (lowest chunk number) is rethrown after all workers join.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned jobs, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  if (workers <= 1) {
    body(std::size_t{0}, count, std::size_t{0});
    return;
  }
  const std::size_t step = (count + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Number of chunks parallel_chunks will use for the same arguments.
inline std::size_t chunk_count(std::size_t count, unsigned jobs) {
  return std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
}

/// Run `body(i)` for every i in [0, count).
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  parallel_chunks(count, jobs, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

/// Lowest i in [0, count) with `pred(i)` true, independent of the worker count.
template <typename Pred>
std::optional<std::size_t> parallel_find_first(std::size_t count, unsigned jobs, Pred&& pred) {
  std::vector<std::optional<std::size_t>> found(chunk_count(count, jobs));
  parallel_chunks(count, jobs, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t i = begin; i < end; ++i) {
      if (pred(i)) {
        found[chunk] = i;
        return;
      }
    }
  });
  for (const auto& f : found) {
    if (f) return f;
  }
  return std::nullopt;
}

}  // namespace starlab
