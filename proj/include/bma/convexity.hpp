#pragma once

#include "bma/analytic_map.hpp"

namespace bma {

// phi(z) = f''/(2f' + zf''); reciprocal of the BMA pole
complex phi_of(const AnalyticMap& f, complex zeta);

// omega(z) = (2g' + zg'')/(z^2 g'') for maps with g(0) = inf; p = z^2 omega
complex omega_of(const AnalyticMap& g, complex zeta);

struct GridSpec {
  int n_r = 48;
  int n_t = 128;
  double r_max = 0.999;
};

enum class ShapeVerdict { Convex, Concave, Neither, Halfplane };

const char* shape_verdict_name(ShapeVerdict v);

struct ShapeReport {
  ShapeVerdict verdict = ShapeVerdict::Neither;
  GridSpec grid;
  double min_abs_p = 0.0;           // over the grid
  double max_dev_from_unit = 0.0;   // max | |p| - 1 |
  double max_cube_excess = 0.0;     // max ( |p| - |zeta|^3 ), exterior case
  bool weak_disk_bound_ok = false;  // all |p| < 1 (exterior paper bound)
  complex witness_zeta{};           // extremal sample
  double witness_abs_p = 0.0;
  double witness_phi_or_omega = 0.0;
};

// Certifies the pole-location side of the convexity/concavity equivalences
// on a radial grid (n_r radii up to r_max, n_t angles).
ShapeReport convexity_report(const AnalyticMap& f, const GridSpec& grid = {},
                             bool parallel = true);
ShapeReport concavity_report(const AnalyticMap& g, const GridSpec& grid = {},
                             bool parallel = true);

// Partner map with f'(z) g'(z) = -1/z^2; works in both directions.
// Interior sources need f''(0) = 0.
MapPtr dual_map(MapPtr src);

// Total curvature of the image of the arc z = r e^{it}, a < t < b:
// int Re{1 + z f''/f'} dt, with the absolute value of the integrand for
// maps carrying the pole at 0.
double total_curvature(const AnalyticMap& f, double r, double a, double b,
                       double abs_tol = 1e-11);

}  // namespace bma
