// Benchmark comparing the serial reference (1 thread) against the
// OpenMP-parallel kernels for the hot inner loops.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "mch/curve.hpp"
#include "mch/evolution.hpp"
#include "mch/functionals.hpp"
#include "mch/parallel.hpp"
#include "mch/params.hpp"

using namespace mch;

namespace {

double time_ms(int reps, const std::function<void()>& f) {
  f();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, int reps, const std::function<void()>& f) {
  set_max_threads(1);
  const double serial = time_ms(reps, f);
  set_max_threads(0);
  const double parallel = time_ms(reps, f);
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const std::size_t n = 8192;
  const auto ygrid = default_y_grid(p, 0.0, 4 * n);

  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  row("curve_eval (full jets)", 5, [&] { eval_curve(p, 0.0, ygrid); });

  const auto curve = eval_curve(p, 0.0, ygrid);
  const double hw = 55.0 / p.k2;  // inside the curve's x-span
  const double h = 2.0 * hw / n;
  const double x0 = -hw;
  row("resample (4 derivatives)", 5, [&] {
    ResampleOptions opts;
    resample(curve, x0, h, n, opts);
  });

  ResampleOptions opts;
  opts.periodic = true;
  const GridField field = resample(curve, x0, h, n, opts);
  const LagrangePair l = lagrange_multipliers(p.c1, p.c2, p.kappa);
  row("gradient_G", 20, [&] { gradient_G(field, l); });

  row("rhs (spectral)", 20, [&] { rhs(field); });

  const GridField ref = orbital_reference_field(p, 0.0, x0, h, n);
  row("orbital_distance", 1, [&] { orbital_distance(ref, p, 0.0); });
  return 0;
}
