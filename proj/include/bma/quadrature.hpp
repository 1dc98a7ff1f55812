#pragma once

#include <functional>
#include <vector>

#include "bma/jet.hpp"

namespace bma {

// nodes/weights on [-1, 1]
struct GaussLegendreRule {
  std::vector<double> x;
  std::vector<double> w;
};

// cached; n up to a few hundred
const GaussLegendreRule& gauss_legendre(int n);

// Adaptive Gauss-Legendre over the segment [z0, z1]: per-panel GL8/GL16
// comparison with recursive bisection. Handles integrands that steepen
// toward an endpoint (radial integrals near the boundary).
// min_panel > 0 stops subdivision below that width (for integrands whose
// evaluation noise grows as panels shrink toward a near-boundary pole).
complex integrate_segment(const std::function<complex(complex)>& f, complex z0,
                          complex z1, double tol = 1e-11, int max_depth = 48,
                          double min_panel = 0.0);

// int_0^zeta outer(s, Q(s)) ds with Q(s) = int_0^s inner; both integrals
// share one adaptive subdivision, Q accumulating across accepted panels.
complex integrate_with_inner(const std::function<complex(complex)>& inner,
                             const std::function<complex(complex, complex)>& outer,
                             complex zeta, double tol = 1e-11,
                             int max_depth = 48, double min_panel = 0.0);

// Same scheme on a real interval.
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-11,
                          int max_doublings = 14);

// Adaptive Simpson with absolute tolerance (used for curvature integrals).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-9, int max_depth = 40);

// Integral over [0,1] of f(t) ~ (1-t)^e * (analytic at t=1), e > -1.
// Geometrically graded panels toward t = 1 plus a two-term analytic tail
// from extrapolating H(t) = f(t) (1-t)^{-e} to the endpoint.
double graded_endpoint_integral(const std::function<double(double)>& f,
                                double e, double tol = 1e-10,
                                int max_levels = 44);
complex graded_endpoint_integral_c(const std::function<complex(complex)>& f,
                                   double e, double tol = 1e-10,
                                   int max_levels = 44);

// exp(w) - 1 without cancellation for small |w|
complex expm1c(complex w);

}  // namespace bma
