#include "bma/analytic_map.hpp"

#include <algorithm>
#include <cmath>

#include "bma/error.hpp"
#include "bma/polygon.hpp"

namespace bma {

namespace {

constexpr double kBoundaryTol = 1e-13;
constexpr double kSingularAngleTol = 1e-11;

double angle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

Jet3 finite_or_throw(Jet3 j, const char* who) {
  if (!jet_finite(j))
    fail(ErrorCode::SingularPoint, std::string(who) + ": jet overflow at evaluation point");
  return j;
}

class StripMap final : public AnalyticMap {
public:
  StripMap() : data_(PolygonData::strip()) {}
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 z = jet_var(zeta);
    return finite_or_throw(0.5 * (log(1.0 + z) - log(1.0 - z)), "strip");
  }
  std::string describe() const override { return "strip"; }
  bool boundary_capable() const override { return true; }
  bool sc_product_speed() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return {0.0, M_PI};
  }
  const PolygonData* polygon() const override { return &data_; }

private:
  PolygonData data_;
};

class SectorMap final : public AnalyticMap {
public:
  explicit SectorMap(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
      fail(ErrorCode::BadParameter, "sector exponent must be in (0, 1]");
  }
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 z = jet_var(zeta);
    Jet3 w = (1.0 + z) / (1.0 - z);
    return finite_or_throw((pow(w, alpha_) - 1.0) / complex(2.0 * alpha_),
                           "sector");
  }
  std::string describe() const override {
    return "sector(" + std::to_string(alpha_) + ")";
  }
  bool boundary_capable() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return {0.0, M_PI};
  }

private:
  double alpha_;
};

// K = A_alpha/(1 + alpha A_alpha): the post-Moebius normalization of the
// sector map with K(0) = 0, K'(0) = 1, K''(0) = 0; maps onto the lens
// bounded by two circular arcs through ±1/alpha.
class LensMap final : public AnalyticMap {
public:
  explicit LensMap(double alpha)
      : alpha_(alpha), sector_(std::make_shared<SectorMap>(alpha)) {}
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 a = sector_->jet(zeta);
    Moebius m{1.0, 0.0, complex(alpha_), 1.0};
    return finite_or_throw(compose(moebius_jet(m, a.f0), a), "lens");
  }
  std::string describe() const override {
    return "lens(" + std::to_string(alpha_) + ")";
  }
  bool boundary_capable() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return {0.0, M_PI};
  }

private:
  double alpha_;
  std::shared_ptr<const SectorMap> sector_;
};

class KoebeMap final : public AnalyticMap {
public:
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 z = jet_var(zeta);
    Jet3 d = 1.0 - z;
    return finite_or_throw(z / (d * d), "koebe");
  }
  std::string describe() const override { return "koebe"; }
  bool boundary_capable() const override { return true; }
  std::vector<double> singular_boundary_angles() const override { return {0.0}; }
};

class MoebiusKindMap final : public AnalyticMap {
public:
  explicit MoebiusKindMap(const Moebius& t) : t_(t) {
    if (t.det() == complex(0.0, 0.0))
      fail(ErrorCode::BadParameter, "degenerate Moebius map");
  }
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    return moebius_jet(t_, zeta);
  }
  std::string describe() const override { return "moebius"; }
  bool boundary_capable() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    ExtendedComplex p = moebius_pole(t_);
    if (!p.infinite && std::abs(std::abs(p.value) - 1.0) < kBoundaryTol)
      return {std::arg(p.value)};
    return {};
  }

private:
  Moebius t_;
};

class PolynomialMap final : public AnalyticMap {
public:
  explicit PolynomialMap(std::vector<complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.size() < 2 || c_[1] == complex(0.0, 0.0))
      fail(ErrorCode::BadParameter,
           "polynomial map needs a nonzero linear coefficient");
  }
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 z = jet_var(zeta);
    Jet3 p = jet_const(0.0);
    for (size_t i = c_.size(); i-- > 0;) p = p * z + c_[i];
    return p;
  }
  std::string describe() const override { return "polynomial"; }
  bool boundary_capable() const override { return true; }

private:
  std::vector<complex> c_;
};

class PrecomposedMap final : public AnalyticMap {
public:
  PrecomposedMap(MapPtr base, complex a, complex c) : info_{std::move(base), a, c} {
    if (std::abs(a) >= 1.0)
      fail(ErrorCode::BadParameter, "automorphism center must satisfy |a| < 1");
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
      fail(ErrorCode::BadParameter, "automorphism rotation must be unimodular");
    info_.c /= std::abs(c);
    sigma_ = Moebius{info_.c, info_.c * info_.a, std::conj(info_.a), 1.0};
    if (const PolygonData* pd = info_.base->polygon()) {
      polygon_ = std::make_unique<PolygonData>(pull_back(*pd));
    }
  }
  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 inner = moebius_jet(sigma_, zeta);
    Jet3 outer = info_.base->jet(inner.f0);
    return compose(outer, inner);
  }
  std::string describe() const override {
    return info_.base->describe() + " %o automorphism";
  }
  bool pole_at_origin() const override {
    return info_.base->pole_at_origin() && info_.a == complex(0.0, 0.0);
  }
  bool boundary_capable() const override { return info_.base->boundary_capable(); }
  std::vector<double> singular_boundary_angles() const override {
    std::vector<double> out;
    Moebius inv = moebius_invert(sigma_);
    for (double t : info_.base->singular_boundary_angles()) {
      ExtendedComplex w = moebius_apply(inv, std::polar(1.0, t));
      out.push_back(std::arg(w.value));
    }
    return out;
  }
  const PolygonData* polygon() const override { return polygon_.get(); }
  const PrecomposeInfo* precompose_info() const override { return &info_; }

private:
  PolygonData pull_back(const PolygonData& pd) const {
    Moebius inv = moebius_invert(sigma_);
    size_t n = pd.prevertex_angles.size();
    std::vector<std::pair<double, double>> pts(n);
    for (size_t k = 0; k < n; ++k) {
      ExtendedComplex w = moebius_apply(inv, std::polar(1.0, pd.prevertex_angles[k]));
      double s = std::arg(w.value);
      if (s < 0) s += 2.0 * M_PI;
      pts[k] = {s, pd.exterior_angles[k]};
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> ang(n), alph(n);
    for (size_t k = 0; k < n; ++k) {
      ang[k] = pts[k].first;
      alph[k] = pts[k].second;
    }
    return PolygonData(std::move(ang), std::move(alph));
  }

  PrecomposeInfo info_;
  Moebius sigma_;
  std::unique_ptr<PolygonData> polygon_;
};

class PostMoebiusMap final : public AnalyticMap {
public:
  PostMoebiusMap(const Moebius& t, MapPtr base) : t_(t), base_(std::move(base)) {
    if (t.det() == complex(0.0, 0.0))
      fail(ErrorCode::BadParameter, "degenerate post-composition transform");
  }
  Jet3 jet(complex zeta) const override {
    Jet3 inner = base_->jet(zeta);
    return compose(moebius_jet(t_, inner.f0), inner);
  }
  std::string describe() const override {
    return "moebius %o " + base_->describe();
  }
  bool pole_at_origin() const override { return base_->pole_at_origin(); }
  bool boundary_capable() const override { return base_->boundary_capable(); }
  std::vector<double> singular_boundary_angles() const override {
    return base_->singular_boundary_angles();
  }
  const PolygonData* polygon() const override { return base_->polygon(); }

private:
  Moebius t_;
  MapPtr base_;
};

}  // namespace

PointSite classify_domain_point(const AnalyticMap& map, complex zeta) {
  double r = std::abs(zeta);
  if (std::abs(r - 1.0) <= kBoundaryTol) {
    if (!map.boundary_capable())
      fail(ErrorCode::OutOfDomain,
           map.describe() + ": boundary evaluation not supported");
    double t = std::arg(zeta);
    for (double s : map.singular_boundary_angles())
      if (angle_distance(t, s) < kSingularAngleTol)
        fail(ErrorCode::SingularPoint,
             map.describe() + ": singular boundary point");
    return PointSite::Boundary;
  }
  if (r < 1.0) return PointSite::Interior;
  fail(ErrorCode::OutOfDomain, map.describe() + ": point outside the closed disk");
}

MapPtr make_strip() { return std::make_shared<StripMap>(); }
MapPtr make_sector(double alpha) { return std::make_shared<SectorMap>(alpha); }
MapPtr make_lens(double alpha) { return std::make_shared<LensMap>(alpha); }
MapPtr make_koebe() { return std::make_shared<KoebeMap>(); }
MapPtr make_moebius_map(const Moebius& t) {
  return std::make_shared<MoebiusKindMap>(t);
}
MapPtr make_polynomial(std::vector<complex> coeffs) {
  return std::make_shared<PolynomialMap>(std::move(coeffs));
}
MapPtr precompose_automorphism(MapPtr f, complex a, complex c) {
  return std::make_shared<PrecomposedMap>(std::move(f), a, c);
}
MapPtr postcompose_moebius(const Moebius& t, MapPtr f) {
  return std::make_shared<PostMoebiusMap>(t, std::move(f));
}

complex schwarzian(const AnalyticMap& f, complex zeta) {
  return schwarzian_of(f.jet(zeta));
}

}  // namespace bma
