#pragma once

#include <array>
#include <vector>

#include "bma/analytic_map.hpp"
#include "bma/polygon.hpp"

namespace bma {

struct CircleArc {
  double t_start = 0.0;
  double t_end = 0.0;  // t_start < t_end <= t_start + 2pi
};

// |f'(e^{it})|; closed-form prevertex product for SC kinds, boundary jet
// otherwise. Rejects prevertices/singular boundary points.
double boundary_speed(const AnalyticMap& map, double t);

struct PoleLocusSample {
  double t;
  complex p;
  double arg_unwrapped;
};

struct PoleLocus {
  std::vector<PoleLocusSample> samples;
  size_t arc_index = 0;
  complex limit_start{}, limit_end{};  // pole limits at the arc endpoints
  bool monotone = false;
  bool increasing = false;
  double total_variation = 0.0;  // |arg change| across the open arc
  double min_dist_to_closed_arc = 0.0;  // interior kinds: locus avoids I_k
};

// Pole of the BMA along a boundary arc between consecutive prevertices.
PoleLocus pole_locus(const AnalyticMap& map, const CircleArc& arc,
                     int n_samples);

struct ProfileReport {
  std::vector<double> t;
  std::vector<double> u;  // |f'|^{-1/2} (or |g'|^{-1/2})
  double scale = 0.0;     // max |u|
  double max_second_diff = 0.0;
  double min_second_diff = 0.0;
  bool profile_ok = false;       // concave (interior) / convex (exterior)
  double speed_min_second_diff = 0.0;  // induced convexity of |f'|, interior
};

// Second-difference check of u(t) = speed^{-1/2} on the delta-shrunken arc.
ProfileReport profile_shape_check(const AnalyticMap& map, const CircleArc& arc,
                                  int n, double delta_frac = 1e-3);

// max over a grid of |u'' + (1/2) Re{S_phi} u| with S_phi = -z^2 Sf + 1/2
// and u'' by central differences of the given step.
double sturm_residual(const AnalyticMap& map, const CircleArc& arc,
                      double step = 1e-3, double delta_frac = 0.2);

// max of Re{z^2 Sf} (interior) or Re{S_psi} = Re{-z^2 Sg + 1/2} (exterior)
// over a boundary grid; both must be negative on open arcs.
double boundary_schwarzian_sign_max(const AnalyticMap& map,
                                    const CircleArc& arc, int n,
                                    double delta_frac = 1e-3);

struct ExtremalPoint {
  double t;             // root of zB = -1 on arc k
  double stationary_t;  // golden-section extremum of the profile
  double contact_residual;  // |1 + zeta f''/f'| at t
  size_t arc_index;
};

// The unique profile extremum on each arc: roots of zB(z) = -1, certified
// against a golden-section search and the p = -zeta characterization.
std::vector<ExtremalPoint> extremal_points(const AnalyticMap& map);

// t -> e^{it} phi(e^{it}) (omega for exterior kinds), evaluable arbitrarily
// close to prevertices; feeds circle_level_roots_fn for prevertex recovery.
std::function<complex(double)> unit_phi_callable(const AnalyticMap& map);

struct ArcIntegrals {
  double speed;          // int_{I_k} |f'| dt
  double inverse_speed;  // int_{I_k} 1/|f'| dt
};

ArcIntegrals arc_integrals(const AnalyticMap& map, size_t k,
                           double tol = 1e-9);

struct SandwichLink {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
};

struct TriangleBalance {
  std::array<double, 3> speed_int{}, inv_speed_int{}, ratio{};
  double spread = 0.0;  // max ratio / min ratio - 1
  bool balanced = false;
  // closing-observation data for precomposed maps g = f o sigma
  bool is_precomposed = false;
  double a_abs = 0.0, b = 0.0, c_const = 0.0;
  std::array<SandwichLink, 3> lower_link{};   // C b^-2 <= int 1/|g'|
  std::array<SandwichLink, 3> upper_link{};   // int |g'| <= C b^2 int 1/|g'|
  std::array<SandwichLink, 3> middle_link{};  // int 1/|g'| <= int |g'| (as printed; can fail, reported)
  std::array<SandwichLink, 3> ratio_bounds{}; // C b^-2 <= int|g'|/int(1/|g'|) <= C b^2
  bool sandwich_holds = false;                // lower & upper links, all k
};

TriangleBalance triangle_balance(const AnalyticMap& map, double tol = 1e-6);

}  // namespace bma
