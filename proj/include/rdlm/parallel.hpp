// SPDX-License-Identifier: Apache-2.0
//
// Deterministic block parallelism for Monte-Carlo ensembles. Work is cut into
// a fixed number of blocks independent of the thread count; block results are
// combined in block order, so outputs are identical for any thread count.

#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

#include "rdlm/types.hpp"

namespace rdlm {

inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(begin, end, block_index) over a fixed partition of [0, n).
inline void parallel_blocks(Index n,
                            const std::function<void(Index, Index, int)>& fn,
                            int n_blocks = 16) {
  if (n <= 0) return;
  n_blocks = static_cast<int>(std::min<Index>(n_blocks, n));
  const Index per = (n + n_blocks - 1) / n_blocks;
  unsigned threads = std::min<unsigned>(worker_count(), n_blocks);
  if (threads <= 1) {
    for (int b = 0; b < n_blocks; ++b) {
      Index lo = b * per;
      Index hi = std::min<Index>(n, lo + per);
      if (lo < hi) fn(lo, hi, b);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (int b = static_cast<int>(w); b < n_blocks;
           b += static_cast<int>(threads)) {
        Index lo = b * per;
        Index hi = std::min<Index>(n, lo + per);
        if (lo < hi) fn(lo, hi, b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rdlm
