#ifndef RANKJUMP_SRC_PARALLEL_HPP
#define RANKJUMP_SRC_PARALLEL_HPP

#include <mpfr.h>

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace rankjump::detail {

template <class R>
struct Slot {
  std::optional<R> value;
  std::exception_ptr error;
};

/// Runs fn(i) for every i in [0, n) on up to `jobs` threads; results keep index order.
template <class R, class Fn>
std::vector<Slot<R>> parallel_map(std::size_t n, int jobs, Fn&& fn) {
  std::vector<Slot<R>> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i].value.emplace(fn(i));
      } catch (...) {
        out[i].error = std::current_exception();
      }
    }
  };
  const std::size_t threads = jobs > 1 ? std::min<std::size_t>(static_cast<std::size_t>(jobs), n) : 1;
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      worker();
      mpfr_free_cache();
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace rankjump::detail

#endif  // RANKJUMP_SRC_PARALLEL_HPP
