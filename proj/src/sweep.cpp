#include "bma/sweep.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bma/boundary.hpp"
#include "bma/error.hpp"

namespace bma::sweep {

namespace {

struct Partial {
  double min_abs_p = std::numeric_limits<double>::infinity();
  long long min_idx = -1;
  complex min_zeta{};
  double max_dev = 0.0;
  double max_excess = -std::numeric_limits<double>::infinity();
  long long excess_idx = -1;
  complex excess_zeta{};
  double max_abs_p = 0.0;
};

void accumulate(Partial& acc, const AnalyticMap& map, const GridSpec& grid,
                long long idx) {
  int j = int(idx / grid.n_t);
  int i = int(idx % grid.n_t);
  double r = grid.r_max * double(j + 1) / grid.n_r;
  double theta = 2.0 * M_PI * i / grid.n_t;
  complex zeta = std::polar(r, theta);
  Jet3 jet = map.derivative_jet(zeta);
  double abs_p;
  if (jet.f2 == complex(0.0, 0.0)) {
    abs_p = std::numeric_limits<double>::infinity();
  } else {
    abs_p = std::abs(zeta + 2.0 * jet.f1 / jet.f2);
  }
  if (abs_p < acc.min_abs_p ||
      (abs_p == acc.min_abs_p && idx < acc.min_idx)) {
    acc.min_abs_p = abs_p;
    acc.min_idx = idx;
    acc.min_zeta = zeta;
  }
  acc.max_dev = std::max(acc.max_dev, std::abs(abs_p - 1.0));
  double excess = abs_p - r * r * r;
  if (excess > acc.max_excess ||
      (excess == acc.max_excess && idx < acc.excess_idx)) {
    acc.max_excess = excess;
    acc.excess_idx = idx;
    acc.excess_zeta = zeta;
  }
  acc.max_abs_p = std::max(acc.max_abs_p, abs_p);
}

void merge(Partial& into, const Partial& from) {
  if (from.min_idx < 0) return;
  if (from.min_abs_p < into.min_abs_p ||
      (from.min_abs_p == into.min_abs_p && from.min_idx < into.min_idx)) {
    into.min_abs_p = from.min_abs_p;
    into.min_idx = from.min_idx;
    into.min_zeta = from.min_zeta;
  }
  into.max_dev = std::max(into.max_dev, from.max_dev);
  if (from.max_excess > into.max_excess ||
      (from.max_excess == into.max_excess &&
       from.excess_idx < into.excess_idx)) {
    into.max_excess = from.max_excess;
    into.excess_idx = from.excess_idx;
    into.excess_zeta = from.excess_zeta;
  }
  into.max_abs_p = std::max(into.max_abs_p, from.max_abs_p);
}

}  // namespace

PoleGridStats pole_grid_scan(const AnalyticMap& map, const GridSpec& grid,
                             bool parallel) {
  if (grid.n_r <= 0 || grid.n_t <= 0 || !(grid.r_max > 0.0 && grid.r_max < 1.0))
    fail(ErrorCode::BadParameter, "bad pole scan grid");
  const long long total = (long long)grid.n_r * grid.n_t;
  Partial result;
  if (parallel) {
#ifdef _OPENMP
    int nthreads = omp_get_max_threads();
#else
    int nthreads = 1;
#endif
    std::vector<Partial> partials(nthreads);
#pragma omp parallel
    {
#ifdef _OPENMP
      Partial& local = partials[omp_get_thread_num()];
#else
      Partial& local = partials[0];
#endif
#pragma omp for schedule(static) nowait
      for (long long idx = 0; idx < total; ++idx)
        accumulate(local, map, grid, idx);
    }
    for (const Partial& p : partials) merge(result, p);
  } else {
    for (long long idx = 0; idx < total; ++idx)
      accumulate(result, map, grid, idx);
  }
  PoleGridStats stats;
  stats.min_abs_p = result.min_abs_p;
  stats.argmin_zeta = result.min_zeta;
  stats.max_dev_from_unit = result.max_dev;
  stats.max_cube_excess = result.max_excess;
  stats.cube_excess_zeta = result.excess_zeta;
  stats.max_abs_p = result.max_abs_p;
  stats.samples = total;
  return stats;
}

std::vector<double> boundary_speed_samples(const AnalyticMap& map, double t0,
                                           double t1, int n, bool parallel) {
  if (n < 2) fail(ErrorCode::BadParameter, "need at least two samples");
  std::vector<double> out(n);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      out[i] = boundary_speed(map, t0 + (t1 - t0) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i)
      out[i] = boundary_speed(map, t0 + (t1 - t0) * i / (n - 1));
  }
  return out;
}

}  // namespace bma::sweep
