#include "mch/parallel.hpp"

#include <algorithm>
#include <thread>

namespace mch {

namespace {
int g_max_threads = 0;  // 0 = hardware
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }

int max_threads() {
  if (g_max_threads > 0) return g_max_threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool parallel_enabled() {
#ifdef _OPENMP
  return max_threads() > 1;
#else
  return false;
#endif
}

double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace mch
