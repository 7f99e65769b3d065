#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isac::par {

// Execution policy for the hot kernels. Every parallel kernel has a serial
// path that produces bit-identical results; tests compare the two.
enum class Exec { serial, parallel };

inline bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

// Runs body(i) for i in [0, n). Each index must write only its own state.
template <typename F>
void parallel_for(std::size_t n, Exec exec, F&& body) {
  if (n == 0) return;
  const bool serial = (exec == Exec::serial) || in_parallel_region();
#ifdef _OPENMP
  if (!serial) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// Deterministic reduction: [0, n) is split into fixed blocks that do not
// depend on the thread count; fill(lo, hi) accumulates one block serially
// and blocks are combined in index order.
template <typename T, typename Fill, typename Combine>
T blocked_reduce(std::size_t n, std::size_t n_blocks, T init, Fill&& fill, Combine&& combine,
                 Exec exec = Exec::parallel) {
  if (n == 0) return init;
  n_blocks = std::max<std::size_t>(1, std::min(n_blocks, n));
  std::vector<T> partial(n_blocks, init);
  parallel_for(n_blocks, exec, [&](std::size_t b) {
    const std::size_t lo = n * b / n_blocks;
    const std::size_t hi = n * (b + 1) / n_blocks;
    partial[b] = fill(lo, hi);
  });
  T acc = init;
  for (const T& p : partial) acc = combine(acc, p);
  return acc;
}

}  // namespace isac::par
