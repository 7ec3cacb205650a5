#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mch {

// Global thread cap for all parallel kernels. 0 = hardware concurrency.
// Set once at startup (CLI --jobs); not intended to be raced against
// running kernels.
void set_max_threads(int n);
int max_threads();

// True when more than one thread would actually be used.
bool parallel_enabled();

// Elementwise parallel map. Every index writes its own output slots, so the
// result is bit-identical for any thread count; the serial path (threads=1)
// is the reference the tests compare against. grain sets the loop size below
// which forking is not worth it for the body at hand.
template <class F>
void parallel_for(std::ptrdiff_t n, F&& f, std::ptrdiff_t grain = 256) {
#ifdef _OPENMP
  if (parallel_enabled() && n >= grain) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
}

// Cascade (pairwise) summation. Error grows like O(log n * eps) instead of
// O(n * eps). Always serial: reductions stay deterministic regardless of
// the thread cap, keeping CLI reports byte-stable.
double pairwise_sum(std::span<const double> v);

}  // namespace mch
