// Timing comparison of the serial and OpenMP sweep paths.
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "bma/bma.hpp"
#include "bma/polygon.hpp"
#include "bma/sweep.hpp"

using namespace bma;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

template <class F>
double time_best_of(int reps, const F& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    double t0 = now();
    f();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  MapPtr pent = interior_from_data(
      PolygonData({0.0, 1.1, 2.4, 3.9, 5.3}, {0.45, 0.35, 0.4, 0.42, 0.38}));
  GridSpec grid{192, 512, 0.999};
  sweep::PoleGridStats serial_stats, parallel_stats;
  double ts = time_best_of(3, [&] {
    serial_stats = sweep::pole_grid_scan(*pent, grid, false);
  });
  double tp = time_best_of(3, [&] {
    parallel_stats = sweep::pole_grid_scan(*pent, grid, true);
  });
  bool same = serial_stats.min_abs_p == parallel_stats.min_abs_p &&
              serial_stats.argmin_zeta == parallel_stats.argmin_zeta;
  std::printf("pole grid scan %dx%d: serial %7.1f ms | parallel %7.1f ms | "
              "speedup %.2fx | identical %s\n",
              grid.n_r, grid.n_t, ts * 1e3, tp * 1e3, ts / tp,
              same ? "yes" : "NO");

  int n = 1500;
  RegionRaster ra, rb;
  ts = time_best_of(3, [&] { ra = region_sample(RegionWindow{}, n, n, 1.0, false); });
  tp = time_best_of(3, [&] { rb = region_sample(RegionWindow{}, n, n, 1.0, true); });
  same = true;
  for (size_t i = 0; i < ra.cells.size(); ++i)
    same = same && ra.cells[i].pole == rb.cells[i].pole &&
           ra.cells[i].cls == rb.cells[i].cls;
  std::printf("region raster %dx%d:   serial %7.1f ms | parallel %7.1f ms | "
              "speedup %.2fx | identical %s\n",
              n, n, ts * 1e3, tp * 1e3, ts / tp, same ? "yes" : "NO");

  int m = 200000;
  std::vector<double> ua, ub;
  ts = time_best_of(3, [&] {
    ua = sweep::boundary_speed_samples(*pent, 0.01, 1.09, m, false);
  });
  tp = time_best_of(3, [&] {
    ub = sweep::boundary_speed_samples(*pent, 0.01, 1.09, m, true);
  });
  std::printf("boundary speed x%d: serial %7.1f ms | parallel %7.1f ms | "
              "speedup %.2fx | identical %s\n",
              m, ts * 1e3, tp * 1e3, ts / tp, ua == ub ? "yes" : "NO");
  return 0;
}
