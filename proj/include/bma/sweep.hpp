#pragma once

#include <vector>

#include "bma/analytic_map.hpp"
#include "bma/convexity.hpp"

namespace bma::sweep {

// Grid statistics of the BMA pole over a radial grid. Serial and OpenMP
// paths produce bit-identical results (per-cell work is independent;
// reductions are merged in thread order with index tie-breaking).
struct PoleGridStats {
  double min_abs_p = 0.0;
  complex argmin_zeta{};
  double max_dev_from_unit = 0.0;  // max | |p| - 1 |
  double max_cube_excess = 0.0;    // max ( |p| - |zeta|^3 )
  complex cube_excess_zeta{};
  double max_abs_p = 0.0;
  long long samples = 0;
};

PoleGridStats pole_grid_scan(const AnalyticMap& map, const GridSpec& grid,
                             bool parallel = true);

// |f'(e^{it})| on a uniform grid of [t0, t1] (n >= 2, endpoints included).
std::vector<double> boundary_speed_samples(const AnalyticMap& map, double t0,
                                           double t1, int n,
                                           bool parallel = true);

}  // namespace bma::sweep
