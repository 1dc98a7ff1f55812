#include "bma/convexity.hpp"

#include <cmath>

#include "bma/detail/value_cache.hpp"
#include "bma/error.hpp"
#include "bma/quadrature.hpp"
#include "bma/sweep.hpp"

namespace bma {

complex phi_of(const AnalyticMap& f, complex zeta) {
  Jet3 j = f.derivative_jet(zeta);
  complex den = 2.0 * j.f1 + zeta * j.f2;
  if (den == complex(0.0, 0.0))
    fail(ErrorCode::DenominatorZero, "phi undefined: BMA pole at the origin");
  return j.f2 / den;
}

complex omega_of(const AnalyticMap& g, complex zeta) {
  if (!g.pole_at_origin())
    fail(ErrorCode::BadParameter, "omega is defined for exterior maps only");
  if (zeta == complex(0.0, 0.0))
    fail(ErrorCode::BadParameter, "omega requested at the pole of g");
  Jet3 j = g.derivative_jet(zeta);
  if (j.f2 == complex(0.0, 0.0))
    fail(ErrorCode::DenominatorZero, "omega undefined where g'' = 0");
  return (2.0 * j.f1 + zeta * j.f2) / (zeta * zeta * j.f2);
}

const char* shape_verdict_name(ShapeVerdict v) {
  switch (v) {
    case ShapeVerdict::Convex: return "convex";
    case ShapeVerdict::Concave: return "concave";
    case ShapeVerdict::Neither: return "neither";
    case ShapeVerdict::Halfplane: return "halfplane";
  }
  return "?";
}

namespace {

constexpr double kCertTol = 1e-9;

}  // namespace

ShapeReport convexity_report(const AnalyticMap& f, const GridSpec& grid,
                             bool parallel) {
  sweep::PoleGridStats s = sweep::pole_grid_scan(f, grid, parallel);
  ShapeReport r;
  r.grid = grid;
  r.min_abs_p = s.min_abs_p;
  r.max_dev_from_unit = s.max_dev_from_unit;
  r.max_cube_excess = s.max_cube_excess;
  r.witness_zeta = s.argmin_zeta;
  r.witness_abs_p = s.min_abs_p;
  r.witness_phi_or_omega = std::abs(phi_of(f, s.argmin_zeta));
  if (s.min_abs_p >= 1.0 - kCertTol)
    r.verdict = s.max_dev_from_unit <= kCertTol ? ShapeVerdict::Halfplane
                                                : ShapeVerdict::Convex;
  else
    r.verdict = ShapeVerdict::Neither;
  return r;
}

ShapeReport concavity_report(const AnalyticMap& g, const GridSpec& grid,
                             bool parallel) {
  if (!g.pole_at_origin())
    fail(ErrorCode::BadParameter,
         "concavity certification needs a map with its pole at 0");
  sweep::PoleGridStats s = sweep::pole_grid_scan(g, grid, parallel);
  ShapeReport r;
  r.grid = grid;
  r.min_abs_p = s.min_abs_p;
  r.max_dev_from_unit = s.max_dev_from_unit;
  r.max_cube_excess = s.max_cube_excess;
  r.weak_disk_bound_ok = s.max_abs_p < 1.0 + kCertTol;
  r.witness_zeta = s.cube_excess_zeta;
  r.witness_abs_p = s.max_cube_excess + std::pow(std::abs(s.cube_excess_zeta), 3.0);
  r.witness_phi_or_omega = std::abs(omega_of(g, s.cube_excess_zeta));
  r.verdict = s.max_cube_excess <= kCertTol ? ShapeVerdict::Concave
                                            : ShapeVerdict::Neither;
  return r;
}

namespace {

// Partner with u'(z) v'(z) = -1/z^2, valid in both directions. Values use
// the exact anchor 1/(z u'(z)) plus an integral whose integrand is analytic
// at 0:  v(z) = 1/(z u') + int_0^z u''/(s u'^2) ds.
class DualMap final : public AnalyticMap {
public:
  explicit DualMap(MapPtr src)
      : src_(std::move(src)), src_exterior_(src_->pole_at_origin()) {
    if (!src_exterior_) {
      Jet3 j0 = src_->jet(complex(0.0, 0.0));
      if (std::abs(j0.f2) > 1e-10 * std::abs(j0.f1))
        fail(ErrorCode::SecondDerivativeNotZero,
             "dual construction needs f''(0) = 0");
    }
  }

  Jet3 derivative_jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    if (!src_exterior_ && std::abs(zeta) < 1e-14)
      fail(ErrorCode::SingularPoint, "dual map has its pole at 0");
    Jet3 sj = src_->derivative_jet(zeta);
    Jet3 gp = gprime_jet(sj, zeta);
    return {0.0, gp.f0, gp.f1, gp.f2};
  }

  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    if (!src_exterior_ && std::abs(zeta) < 1e-14)
      fail(ErrorCode::SingularPoint, "dual map has its pole at 0");
    Jet3 sj = src_->derivative_jet(zeta);
    Jet3 gp = gprime_jet(sj, zeta);
    complex value = cache_.get_or_compute(zeta, [&] {
      complex anchor = 1.0 / (zeta * sj.f1);
      complex integral = integrate_segment(
          [this](complex s) {
            Jet3 q = src_->derivative_jet(s);
            return q.f2 / (s * q.f1 * q.f1);
          },
          0.0, zeta);
      return anchor + integral;
    });
    return {value, gp.f0, gp.f1, gp.f2};
  }

  std::string describe() const override {
    return "dual(" + src_->describe() + ")";
  }
  bool pole_at_origin() const override { return !src_exterior_; }
  bool boundary_capable() const override { return src_->boundary_capable(); }
  std::vector<double> singular_boundary_angles() const override {
    return src_->singular_boundary_angles();
  }
  const PolygonData* polygon() const override { return src_->polygon(); }
  bool sc_product_speed() const override { return src_->sc_product_speed(); }

private:
  Jet3 gprime_jet(const Jet3& sj, complex zeta) const {
    // jet of -1/(z^2 u'); the garbage third slot of the u' jet only
    // contaminates the (unused) third slot of the result
    Jet3 up{sj.f1, sj.f2, sj.f3, 0.0};
    Jet3 z2{zeta * zeta, 2.0 * zeta, 2.0, 0.0};
    return jet_const(complex(-1.0, 0.0)) / (z2 * up);
  }

  MapPtr src_;
  bool src_exterior_;
  detail::ValueCache cache_;
};

}  // namespace

MapPtr dual_map(MapPtr src) { return std::make_shared<DualMap>(std::move(src)); }

double total_curvature(const AnalyticMap& f, double r, double a, double b,
                       double abs_tol) {
  if (!(r > 0.0 && r < 1.0))
    fail(ErrorCode::BadParameter, "curvature radius must lie in (0, 1)");
  const bool use_abs = f.pole_at_origin();
  auto integrand = [&](double t) {
    complex z = std::polar(r, t);
    Jet3 j = f.derivative_jet(z);
    double v = (1.0 + z * j.f2 / j.f1).real();
    return use_abs ? std::abs(v) : v;
  };
  return adaptive_simpson(integrand, a, b, abs_tol);
}

}  // namespace bma
