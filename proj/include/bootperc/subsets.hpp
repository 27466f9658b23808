#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

namespace bootperc {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, k), saturating at kSaturated.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// Advances `c` (strictly increasing, values < limit) to the next k-subset in
// colexicographic order. Returns false after the last one.
inline bool next_colex(std::vector<std::size_t>& c, std::size_t limit) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t cap = (i + 1 < k) ? c[i + 1] : limit;
    if (c[i] + 1 < cap) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

// Next integer with the same popcount (Gosper). Iterating from (1<<k)-1
// visits k-subsets of the low bits in colex order.
inline std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Evaluates chunk(i) for i in [0, chunks) on `jobs` threads and returns the
// smallest i for which chunk(i) returned true (or `chunks` if none). Every
// index below the returned one is evaluated, so the answer is the same for
// any job count.
template <typename F>
std::size_t parallel_first(std::size_t chunks, unsigned jobs, F&& chunk) {
  if (jobs <= 1 || chunks <= 1) {
    for (std::size_t i = 0; i < chunks; ++i)
      if (chunk(i)) return i;
    return chunks;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{chunks};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= chunks || i > best.load()) return;
      if (chunk(i)) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<std::size_t>(jobs, chunks);
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return best.load();
}

}  // namespace bootperc
