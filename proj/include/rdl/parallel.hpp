#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace rdl {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Deterministic reduction: indices [0, n) are cut into fixed 65536-element
// blocks, each block is summed sequentially in long double, and the block sums
// are combined by a pairwise tree in block order. The result depends only on n
// and f, never on the thread count.
template <class F>
double block_sum(std::uint64_t n, int threads, F&& f) {
  constexpr std::uint64_t kBlock = 65536;
  if (n == 0) return 0.0;
  std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<long double> partial(static_cast<std::size_t>(nblocks), 0.0L);
  auto run_block = [&](std::uint64_t b) {
    std::uint64_t lo = b * kBlock;
    std::uint64_t hi = std::min(n, lo + kBlock);
    long double acc = 0.0L;
    for (std::uint64_t i = lo; i < hi; ++i) acc += static_cast<long double>(f(i));
    partial[static_cast<std::size_t>(b)] = acc;
  };
  threads = resolve_threads(threads);
  if (threads <= 1 || nblocks == 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&run_block, nblocks, threads, w] {
        for (std::uint64_t b = static_cast<std::uint64_t>(w); b < nblocks;
             b += static_cast<std::uint64_t>(threads))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  while (partial.size() > 1) {
    std::vector<long double> next((partial.size() + 1) / 2, 0.0L);
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next[i / 2] = partial[i] + partial[i + 1];
    if (partial.size() % 2) next.back() = partial.back();
    partial = std::move(next);
  }
  return static_cast<double>(partial[0]);
}

}  // namespace rdl
