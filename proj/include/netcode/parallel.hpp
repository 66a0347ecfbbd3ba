#pragma once

// Deterministic chunked parallelism: [0, count) is split into contiguous
// chunks whose results come back in index order, whatever the thread count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace netcode {

inline std::size_t default_jobs() {
  auto hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

/// Calls body(begin, end) on up to `jobs` contiguous ranges covering [0, count)
/// and returns their results in range order. The first exception, by range
/// order, is rethrown after every thread has joined.
template <class Body>
auto run_chunks(std::uint64_t count, std::size_t jobs, Body body)
    -> std::vector<decltype(body(std::uint64_t{}, std::uint64_t{}))> {
  using Result = decltype(body(std::uint64_t{}, std::uint64_t{}));
  jobs = std::max<std::size_t>(1, jobs);
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, count));
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto range = [&](std::uint64_t c) {
    return std::pair{count * c / chunks, count * (c + 1) / chunks};
  };
  if (chunks == 1) {
    results[0] = body(0, count);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    threads.emplace_back([&, c] {
      try {
        auto [b, e] = range(c);
        results[c] = body(b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace netcode
