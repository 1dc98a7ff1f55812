#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bma/jet.hpp"
#include "bma/moebius.hpp"

namespace bma {

struct PolygonData;
class AnalyticMap;
using MapPtr = std::shared_ptr<const AnalyticMap>;

// f = base ∘ sigma with sigma(z) = c (z + a)/(1 + conj(a) z)
struct PrecomposeInfo {
  MapPtr base;
  complex a;
  complex c;
};

// A locally injective analytic map of the open unit disk, evaluable as a
// 3-jet. Boundary-capable kinds also evaluate on |zeta| = 1 away from their
// singular boundary points. Instances are immutable; evaluation is pure and
// safe for concurrent callers.
class AnalyticMap {
public:
  virtual ~AnalyticMap() = default;

  virtual Jet3 jet(complex zeta) const = 0;
  virtual std::string describe() const = 0;

  // f', f'', f''' only; quadrature-backed kinds skip the value computation
  // and leave f0 = 0. Everything that needs just derivatives (poles, phi,
  // omega, Schwarzians, boundary speeds) goes through this.
  virtual Jet3 derivative_jet(complex zeta) const { return jet(zeta); }

  // true when |f'(e^{it})| is exactly the prevertex product
  // prod_k (2|sin((t - t_k)/2)|)^{-/+alpha_k} over this map's polygon()
  virtual bool sc_product_speed() const { return false; }

  // true for maps of the disk onto the complement of a convex set (g(0) = inf)
  virtual bool pole_at_origin() const { return false; }
  virtual bool boundary_capable() const { return false; }
  virtual std::vector<double> singular_boundary_angles() const { return {}; }

  // prevertex/angle structure when the map is (or wraps) a polygon map
  virtual const PolygonData* polygon() const { return nullptr; }
  virtual const PrecomposeInfo* precompose_info() const { return nullptr; }
};

enum class PointSite { Interior, Boundary };

// Validates zeta against the map's evaluable set. Throws OutOfDomain for
// |zeta| > 1 or boundary points of non-boundary-capable maps, SingularPoint
// near a singular boundary angle.
PointSite classify_domain_point(const AnalyticMap& map, complex zeta);

MapPtr make_strip();
MapPtr make_sector(double alpha);
MapPtr make_lens(double alpha);
MapPtr make_koebe();
MapPtr make_moebius_map(const Moebius& t);
MapPtr make_polynomial(std::vector<complex> coeffs);

MapPtr precompose_automorphism(MapPtr f, complex a, complex c);
MapPtr postcompose_moebius(const Moebius& t, MapPtr f);

complex schwarzian(const AnalyticMap& f, complex zeta);

}  // namespace bma
