#include "bma/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "bma/detail/value_cache.hpp"
#include "bma/error.hpp"
#include "bma/quadrature.hpp"

namespace bma {

namespace {

constexpr double kAngleSumTol = 1e-12;

using detail::ValueCache;

double nearest_unimodular_distance(const std::vector<double>& angles,
                                   complex zeta) {
  double d = 2.0;
  for (double t : angles) d = std::min(d, std::abs(zeta - std::polar(1.0, t)));
  return std::max(d, 1e-15);
}

// quadrature tolerance for exp-of-integral values: the integrand's
// denominator is known only to eps absolute, which caps the reachable
// accuracy at ~eps/dist near a prevertex
double integral_tol(double dist) { return std::max(1e-11, 2e-15 / dist); }
double panel_floor(double dist) { return 0.125 * dist; }

class ScInteriorMap final : public AnalyticMap {
public:
  explicit ScInteriorMap(PolygonData data) : data_(std::move(data)) {
    for (size_t k = 0; k < data_.size(); ++k)
      prevertices_.push_back(data_.prevertex(k));
  }

  Jet3 fprime_jet(complex z) const {
    Jet3 id = jet_var(z);
    Jet3 acc = jet_const(0.0);
    for (size_t k = 0; k < prevertices_.size(); ++k) {
      Jet3 lin = 1.0 - std::conj(prevertices_[k]) * id;
      if (lin.f0.real() <= 0.0 && std::abs(lin.f0.imag()) < 1e-15)
        fail(ErrorCode::BranchCut, "SC factor crossed the principal branch cut");
      acc = acc - data_.exterior_angles[k] * log(lin);
    }
    return exp(acc);
  }

  complex fprime_value(complex z) const {
    complex acc = 0.0;
    for (size_t k = 0; k < prevertices_.size(); ++k)
      acc -= data_.exterior_angles[k] * std::log(1.0 - std::conj(prevertices_[k]) * z);
    return std::exp(acc);
  }

  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 fp = fprime_jet(zeta);
    double dist = nearest_unimodular_distance(data_.prevertex_angles, zeta);
    double tol = integral_tol(dist);
    complex value = cache_.get_or_compute(zeta, [&] {
      return integrate_segment([this](complex s) { return fprime_value(s); },
                               0.0, zeta, tol, 48, panel_floor(dist));
    });
    return {value, fp.f0, fp.f1, fp.f2};
  }

  Jet3 derivative_jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    Jet3 fp = fprime_jet(zeta);
    return {0.0, fp.f0, fp.f1, fp.f2};
  }

  std::string describe() const override {
    return "polygon-interior(n=" + std::to_string(data_.size()) + ")";
  }
  bool boundary_capable() const override { return true; }
  bool sc_product_speed() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return data_.prevertex_angles;
  }
  const PolygonData* polygon() const override { return &data_; }

private:
  PolygonData data_;
  std::vector<complex> prevertices_;
  ValueCache cache_;
};

// shared between the two Blaschke-driven constructions
std::optional<PolygonData> try_polygon_from_blaschke(const BlaschkeProduct& b) {
  try {
    return polygon_from_blaschke(b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

class BlaschkeInteriorMap final : public AnalyticMap {
public:
  explicit BlaschkeInteriorMap(BlaschkeProduct b)
      : b_(std::move(b)), data_(try_polygon_from_blaschke(b_)) {
    if (b_.degree() < 1)
      fail(ErrorCode::BadParameter,
           "interior construction needs a Blaschke product of degree >= 1");
    singular_angles_ = data_ ? data_->prevertex_angles : circle_level_roots(b_, 1);
  }

  // f''/f' at z as a 3-jet (derivatives of the log-derivative)
  Jet3 log_deriv_jet(complex z) const {
    Jet3 bj = b_.jet(z);
    Jet3 id = jet_var(z);
    return 2.0 * bj / (1.0 - id * bj);
  }

  complex q_value(complex s) const {
    complex bv = b_.eval(s);
    return 2.0 * bv / (1.0 - s * bv);
  }

  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    double dist = nearest_unimodular_distance(singular_angles_, zeta);
    double tol = integral_tol(dist);
    complex fp = fp_cache_.get_or_compute(zeta, [&] {
      return std::exp(integrate_segment(
          [this](complex s) { return q_value(s); }, 0.0, zeta, tol, 48,
          panel_floor(dist)));
    });
    complex value = f_cache_.get_or_compute(zeta, [&] {
      return integrate_with_inner(
          [this](complex s) { return q_value(s); },
          [](complex, complex q) { return std::exp(q); }, zeta, tol, 48,
          panel_floor(dist));
    });
    Jet3 q = log_deriv_jet(zeta);
    return {value, fp, q.f0 * fp, (q.f1 + q.f0 * q.f0) * fp};
  }

  Jet3 derivative_jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    double dist = nearest_unimodular_distance(singular_angles_, zeta);
    double tol = integral_tol(dist);
    complex fp = fp_cache_.get_or_compute(zeta, [&] {
      return std::exp(integrate_segment(
          [this](complex s) { return q_value(s); }, 0.0, zeta, tol, 48,
          panel_floor(dist)));
    });
    Jet3 q = log_deriv_jet(zeta);
    return {0.0, fp, q.f0 * fp, (q.f1 + q.f0 * q.f0) * fp};
  }

  std::string describe() const override {
    return "blaschke-interior(deg=" + std::to_string(b_.degree()) + ")";
  }
  bool boundary_capable() const override { return true; }
  bool sc_product_speed() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return singular_angles_;
  }
  const PolygonData* polygon() const override {
    return data_ ? &*data_ : nullptr;
  }
  const BlaschkeProduct& blaschke() const { return b_; }

private:
  BlaschkeProduct b_;
  std::optional<PolygonData> data_;
  std::vector<double> singular_angles_;
  ValueCache fp_cache_, f_cache_;
};

class BlaschkeExteriorMap final : public AnalyticMap {
public:
  explicit BlaschkeExteriorMap(BlaschkeProduct b)
      : b_(std::move(b)), data_(try_polygon_from_blaschke(b_)) {
    if (b_.degree() < 1)
      fail(ErrorCode::BadParameter,
           "exterior construction needs a Blaschke product of degree >= 1");
    if (b_.eval(0.0) != complex(0.0, 0.0))
      fail(ErrorCode::BadParameter,
           "exterior construction needs B(0) = 0");
    singular_angles_ = data_ ? data_->prevertex_angles : circle_level_roots(b_, 1);
  }

  complex q_value(complex s) const {
    complex bv = b_.eval(s);
    return -2.0 * bv / (1.0 - s * bv);
  }

  Jet3 log_deriv_jet(complex z) const {  // E'/E where g' = -z^{-2} E
    Jet3 bj = b_.jet(z);
    Jet3 id = jet_var(z);
    return -2.0 * bj / (1.0 - id * bj);
  }

  Jet3 jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    if (std::abs(zeta) < 1e-14)
      fail(ErrorCode::SingularPoint, "exterior map has its pole at 0");
    double dist = nearest_unimodular_distance(singular_angles_, zeta);
    double tol = integral_tol(dist);
    complex e0 = e_cache_.get_or_compute(zeta, [&] {
      return std::exp(integrate_segment(
          [this](complex s) { return q_value(s); }, 0.0, zeta, tol, 48,
          panel_floor(dist)));
    });
    complex value = g_cache_.get_or_compute(zeta, [&] {
      complex reg = integrate_with_inner(
          [this](complex s) { return q_value(s); },
          [](complex s, complex q) { return -expm1c(q) / (s * s); }, zeta, tol,
          48, panel_floor(dist));
      return 1.0 / zeta + reg;
    });
    Jet3 q = log_deriv_jet(zeta);
    Jet3 ejet{e0, q.f0 * e0, (q.f1 + q.f0 * q.f0) * e0,
              (q.f2 + 3.0 * q.f0 * q.f1 + q.f0 * q.f0 * q.f0) * e0};
    complex z2 = zeta * zeta;
    Jet3 zm2{1.0 / z2, -2.0 / (z2 * zeta), 6.0 / (z2 * z2),
             -24.0 / (z2 * z2 * zeta)};
    Jet3 gp = -1.0 * (zm2 * ejet);
    return {value, gp.f0, gp.f1, gp.f2};
  }

  Jet3 derivative_jet(complex zeta) const override {
    classify_domain_point(*this, zeta);
    if (std::abs(zeta) < 1e-14)
      fail(ErrorCode::SingularPoint, "exterior map has its pole at 0");
    double dist = nearest_unimodular_distance(singular_angles_, zeta);
    double tol = integral_tol(dist);
    complex e0 = e_cache_.get_or_compute(zeta, [&] {
      return std::exp(integrate_segment(
          [this](complex s) { return q_value(s); }, 0.0, zeta, tol, 48,
          panel_floor(dist)));
    });
    Jet3 q = log_deriv_jet(zeta);
    Jet3 ejet{e0, q.f0 * e0, (q.f1 + q.f0 * q.f0) * e0,
              (q.f2 + 3.0 * q.f0 * q.f1 + q.f0 * q.f0 * q.f0) * e0};
    complex z2 = zeta * zeta;
    Jet3 zm2{1.0 / z2, -2.0 / (z2 * zeta), 6.0 / (z2 * z2),
             -24.0 / (z2 * z2 * zeta)};
    Jet3 gp = -1.0 * (zm2 * ejet);
    return {0.0, gp.f0, gp.f1, gp.f2};
  }

  std::string describe() const override {
    return "blaschke-exterior(deg=" + std::to_string(b_.degree()) + ")";
  }
  bool pole_at_origin() const override { return true; }
  bool boundary_capable() const override { return true; }
  bool sc_product_speed() const override { return true; }
  std::vector<double> singular_boundary_angles() const override {
    return singular_angles_;
  }
  const PolygonData* polygon() const override {
    return data_ ? &*data_ : nullptr;
  }
  const BlaschkeProduct& blaschke() const { return b_; }

private:
  BlaschkeProduct b_;
  std::optional<PolygonData> data_;
  std::vector<double> singular_angles_;
  ValueCache e_cache_, g_cache_;
};

}  // namespace

PolygonData::PolygonData(std::vector<double> angles, std::vector<double> alphas)
    : prevertex_angles(std::move(angles)), exterior_angles(std::move(alphas)) {
  size_t n = prevertex_angles.size();
  if (n < 2 || exterior_angles.size() != n)
    fail(ErrorCode::BadPolygonData, "need n >= 2 prevertices with angles");
  double sum = 0.0;
  for (double a : exterior_angles) sum += a;
  if (std::abs(sum - 2.0) > kAngleSumTol)
    fail(ErrorCode::BadPolygonData, "exterior angles must sum to 2");
  double hi_bound = (n == 2) ? 1.0 + 1e-15 : 1.0 - 1e-15;
  for (double a : exterior_angles)
    if (!(a > 0.0 && a <= hi_bound))
      fail(ErrorCode::BadPolygonData, "exterior angle out of range");
  for (size_t k = 0; k < n; ++k) {
    if (prevertex_angles[k] < 0.0 || prevertex_angles[k] >= 2.0 * M_PI)
      fail(ErrorCode::BadPolygonData, "prevertex angle outside [0, 2pi)");
    if (k > 0 && prevertex_angles[k] <= prevertex_angles[k - 1])
      fail(ErrorCode::BadPolygonData, "prevertex angles must increase strictly");
  }
}

bool PolygonData::bounded() const {
  for (double a : exterior_angles)
    if (a >= 1.0 - 1e-12) return false;
  return true;
}

MapPtr interior_from_data(PolygonData data) {
  return std::make_shared<ScInteriorMap>(std::move(data));
}

MapPtr interior_from_blaschke(const BlaschkeProduct& b) {
  return std::make_shared<BlaschkeInteriorMap>(b);
}

MapPtr exterior_from_blaschke(const BlaschkeProduct& b) {
  return std::make_shared<BlaschkeExteriorMap>(b);
}

PolygonData polygon_from_blaschke(const BlaschkeProduct& b) {
  std::vector<double> roots = circle_level_roots(b, 1);
  std::vector<double> alphas;
  for (double t : roots)
    alphas.push_back(2.0 / (1.0 + boundary_log_derivative(b, t)));
  return PolygonData(std::move(roots), std::move(alphas));
}

PolygonData triangle_prevertices_normalized(double a1, double a2, double a3) {
  for (double a : {a1, a2, a3})
    if (!(a > 0.0 && a < 1.0))
      fail(ErrorCode::BadAngles, "triangle exterior angles must lie in (0, 1)");
  if (std::abs(a1 + a2 + a3 - 2.0) > kAngleSumTol)
    fail(ErrorCode::BadAngles, "triangle exterior angles must sum to 2");

  auto residual = [&](double t2, double t3) {
    complex s = a1 + a2 * std::polar(1.0, t2) + a3 * std::polar(1.0, t3);
    return s;
  };
  const double starts[][2] = {{2.0, 4.2}, {1.5, 3.5}, {2.8, 4.8}};
  for (const double* s0 : starts) {
    double t2 = s0[0], t3 = s0[1];
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      complex r = residual(t2, t3);
      if (std::abs(r) < 1e-13) {
        ok = true;
        break;
      }
      // Jacobian columns i a2 e^{it2}, i a3 e^{it3}
      complex c2 = complex(0, 1) * a2 * std::polar(1.0, t2);
      complex c3 = complex(0, 1) * a3 * std::polar(1.0, t3);
      double det = c2.real() * c3.imag() - c2.imag() * c3.real();
      if (std::abs(det) < 1e-14) break;
      double d2 = (-r.real() * c3.imag() + r.imag() * c3.real()) / det;
      double d3 = (-c2.real() * r.imag() + c2.imag() * r.real()) / det;
      double lambda = 1.0;
      for (int half = 0; half < 30; ++half) {
        if (std::abs(residual(t2 + lambda * d2, t3 + lambda * d3)) <
            std::abs(r) * (1.0 - 0.25 * lambda))
          break;
        lambda *= 0.5;
      }
      t2 += lambda * d2;
      t3 += lambda * d3;
    }
    if (!ok) continue;
    t2 = std::fmod(t2, 2.0 * M_PI);
    if (t2 < 0) t2 += 2.0 * M_PI;
    t3 = std::fmod(t3, 2.0 * M_PI);
    if (t3 < 0) t3 += 2.0 * M_PI;
    if (t2 > t3) {
      // the two solutions are conjugate orderings; keep increasing angles
      std::swap(t2, t3);
      return PolygonData({0.0, t2, t3}, {a1, a3, a2});
    }
    return PolygonData({0.0, t2, t3}, {a1, a2, a3});
  }
  fail(ErrorCode::NoConvergence,
       "prevertex normalization Newton failed from all starts");
}

const BlaschkeProduct* blaschke_of(const AnalyticMap& map) {
  if (auto* m = dynamic_cast<const BlaschkeInteriorMap*>(&map))
    return &m->blaschke();
  if (auto* m = dynamic_cast<const BlaschkeExteriorMap*>(&map))
    return &m->blaschke();
  return nullptr;
}

std::vector<complex> vertices_of(const AnalyticMap& map) {
  const PolygonData* pd = map.polygon();
  if (!pd) fail(ErrorCode::BadPolygonData, "map carries no polygon structure");
  if (!pd->bounded())
    fail(ErrorCode::BadPolygonData,
         "vertices at infinity for an unbounded polygon");
  const bool exterior = map.pole_at_origin();
  const double rho = 0.5;
  std::vector<complex> vertices;
  for (size_t k = 0; k < pd->size(); ++k) {
    complex zk = pd->prevertex(k);
    double alpha = pd->exterior_angles[k];
    double expo = exterior ? alpha : -alpha;
    complex inner_value = map.jet(rho * zk).f0;
    complex rest = graded_endpoint_integral_c(
        [&](complex u) {
          double t = rho + (1.0 - rho) * u.real();
          return map.derivative_jet(t * zk).f1;
        },
        expo, 1e-10, 34);
    vertices.push_back(inner_value + zk * (1.0 - rho) * rest);
  }
  // turning angle at each vertex must be pi*alpha_k (sign fixed by
  // orientation: interior maps turn left, exterior maps turn right)
  size_t n = vertices.size();
  if (n >= 3) {
    for (size_t k = 0; k < n; ++k) {
      complex in = vertices[k] - vertices[(k + n - 1) % n];
      complex out = vertices[(k + 1) % n] - vertices[k];
      double turn = std::arg(out / in);
      double expected = M_PI * pd->exterior_angles[k] * (exterior ? -1.0 : 1.0);
      if (std::abs(turn - expected) > 1e-6)
        fail(ErrorCode::QuadratureFailure,
             "vertex turning angle inconsistent with polygon data");
    }
  }
  return vertices;
}

}  // namespace bma
