#pragma once

#include <optional>
#include <vector>

#include "bma/analytic_map.hpp"
#include "bma/blaschke.hpp"

namespace bma {

// Prevertices e^{i t_k} (strictly increasing t_k in [0, 2pi)) and exterior
// angles alpha_k (x pi) of a convex polygon, sum alpha_k = 2. The degenerate
// strip n = 2 with alpha = (1, 1) is admitted; for n >= 3 each alpha_k
// must lie in (0, 1).
struct PolygonData {
  std::vector<double> prevertex_angles;
  std::vector<double> exterior_angles;

  PolygonData(std::vector<double> angles, std::vector<double> alphas);
  static PolygonData strip() { return PolygonData({0.0, M_PI}, {1.0, 1.0}); }

  size_t size() const { return prevertex_angles.size(); }
  complex prevertex(size_t k) const {
    return std::polar(1.0, prevertex_angles[k]);
  }
  // arc I_k runs from t_k to t_{k+1} (wrapping past 2pi for the last arc)
  double arc_start(size_t k) const { return prevertex_angles[k]; }
  double arc_end(size_t k) const {
    return k + 1 < size() ? prevertex_angles[k + 1]
                          : prevertex_angles[0] + 2.0 * M_PI;
  }
  bool bounded() const;
};

// f'(z) = prod_k (1 - conj(z_k) z)^{-alpha_k}, f(0) = 0, f'(0) = 1
MapPtr interior_from_data(PolygonData data);

// f''/f' = 2B/(1 - zB), f(0) = 0, f'(0) = 1 (exp-of-integral construction)
MapPtr interior_from_blaschke(const BlaschkeProduct& b);

// g'(z) = -z^{-2} exp(int_0^z -2B/(1 - sB)), g(z) = 1/z + O(z); needs B(0) = 0
MapPtr exterior_from_blaschke(const BlaschkeProduct& b);

// Solves alpha_1 z_1 + alpha_2 z_2 + alpha_3 z_3 = 0 with t_1 = 0 by damped
// Newton; the resulting interior map has f''(0) = 0.
PolygonData triangle_prevertices_normalized(double a1, double a2, double a3);

// Prevertex/angle structure carried by a Blaschke product: prevertices are
// the roots of zB(z) = 1 and alpha_k = 2/(1 + |B'(z_k)|).
PolygonData polygon_from_blaschke(const BlaschkeProduct& b);

// Vertices f(z_k) by endpoint-graded radial quadrature. Requires a bounded
// polygon structure; validates the turning angles pi*alpha_k.
std::vector<complex> vertices_of(const AnalyticMap& map);

// Explicit Blaschke datum of a map, when it has one (interior/exterior
// Blaschke constructions); nullptr otherwise.
const BlaschkeProduct* blaschke_of(const AnalyticMap& map);

}  // namespace bma
