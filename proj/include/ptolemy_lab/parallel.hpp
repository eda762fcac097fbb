#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ptolemy_lab {

/// Worker count used when a caller does not pin one: $PTOLEMY_LAB_THREADS, else all cores.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("PTOLEMY_LAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

struct Execution {
  unsigned threads = default_thread_count();
};

/// Splits [0, total) into contiguous chunks, runs `chunk(begin, end)` on each and folds the
/// partial results left to right with `combine`. The result is independent of the thread
/// count whenever `combine` is associative.
template <typename Result, typename ChunkFn, typename Combine>
Result parallel_reduce(std::uint64_t total, const Execution& exec, Result identity, ChunkFn&& chunk,
                       Combine&& combine) {
  if (total == 0) return identity;
  std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(exec.threads, total));
  if (workers == 1) return combine(std::move(identity), chunk(std::uint64_t{0}, total));

  std::vector<Result> partial(workers, identity);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      std::uint64_t b = total * w / workers;
      std::uint64_t e = total * (w + 1) / workers;
      pool.emplace_back([&, w, b, e] {
        try {
          partial[w] = chunk(b, e);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  Result acc = std::move(identity);
  for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
  return acc;
}

/// Runs `body(begin, end)` over contiguous chunks of [0, total); chunks write disjoint output.
template <typename Body>
void parallel_for(std::uint64_t total, const Execution& exec, Body&& body) {
  parallel_reduce<int>(
      total, exec, 0,
      [&](std::uint64_t b, std::uint64_t e) {
        body(b, e);
        return 0;
      },
      [](int, int) { return 0; });
}

}  // namespace ptolemy_lab
