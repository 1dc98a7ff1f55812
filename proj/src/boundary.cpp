#include "bma/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "bma/blaschke.hpp"
#include "bma/convexity.hpp"
#include "bma/error.hpp"
#include "bma/quadrature.hpp"

namespace bma {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// index k of the prevertex arc [t_k, t_{k+1}] containing the given arc
size_t containing_arc(const PolygonData& pd, const CircleArc& arc) {
  if (!(arc.t_end > arc.t_start && arc.t_end <= arc.t_start + kTwoPi))
    fail(ErrorCode::BadParameter, "bad circle arc");
  const double slack = 1e-12;
  for (size_t k = 0; k < pd.size(); ++k) {
    double a = pd.arc_start(k), b = pd.arc_end(k);
    // shift arc start into [a - slack, a + 2pi)
    double s = arc.t_start + kTwoPi * std::ceil((a - slack - arc.t_start) / kTwoPi);
    double e = s + (arc.t_end - arc.t_start);
    if (s >= a - slack && e <= b + slack) return k;
  }
  fail(ErrorCode::ArcCrossesPrevertex,
       "arc is not contained between consecutive prevertices");
}

const PolygonData& require_polygon(const AnalyticMap& map) {
  const PolygonData* pd = map.polygon();
  if (!pd)
    fail(ErrorCode::BadPolygonData, "operation needs a polygon-kind map");
  return *pd;
}

complex pole_at(const AnalyticMap& map, complex zeta) {
  Jet3 j = map.derivative_jet(zeta);
  if (j.f1 == complex(0.0, 0.0))
    fail(ErrorCode::CriticalPoint, "pole undefined where f' = 0");
  if (j.f2 == complex(0.0, 0.0))
    fail(ErrorCode::SingularPoint, "pole at infinity on the locus");
  return zeta + 2.0 * j.f1 / j.f2;
}

}  // namespace

double boundary_speed(const AnalyticMap& map, double t) {
  complex zeta = std::polar(1.0, t);
  classify_domain_point(map, zeta);
  const PolygonData* pd = map.polygon();
  if (pd && map.sc_product_speed()) {
    double sign = map.pole_at_origin() ? 1.0 : -1.0;
    double log_speed = 0.0;
    for (size_t k = 0; k < pd->size(); ++k)
      log_speed += sign * pd->exterior_angles[k] *
                   std::log(2.0 * std::abs(std::sin(0.5 * (t - pd->prevertex_angles[k]))));
    return std::exp(log_speed);
  }
  return std::abs(map.derivative_jet(zeta).f1);
}

PoleLocus pole_locus(const AnalyticMap& map, const CircleArc& arc,
                     int n_samples) {
  if (n_samples < 8)
    fail(ErrorCode::BadParameter, "need at least 8 locus samples");
  const PolygonData& pd = require_polygon(map);
  PoleLocus locus;
  locus.arc_index = containing_arc(pd, arc);
  const double len = arc.t_end - arc.t_start;
  const double delta = len * 1e-10;
  const double lo = arc.t_start + delta, hi = arc.t_end - delta;

  std::vector<double> ts(n_samples);
  for (int i = 0; i < n_samples; ++i)
    ts[i] = lo + (hi - lo) * i / (n_samples - 1);
  std::vector<complex> ps(n_samples);
  for (int i = 0; i < n_samples; ++i) ps[i] = pole_at(map, std::polar(1.0, ts[i]));

  // refine until successive argument steps are below pi/4
  for (int pass = 0; pass < 24; ++pass) {
    bool ok = true;
    std::vector<double> nts;
    std::vector<complex> nps;
    nts.push_back(ts[0]);
    nps.push_back(ps[0]);
    for (size_t i = 1; i < ts.size(); ++i) {
      if (std::abs(std::arg(ps[i] * std::conj(ps[i - 1]))) > M_PI / 4.0) {
        ok = false;
        double tm = 0.5 * (ts[i - 1] + ts[i]);
        nts.push_back(tm);
        nps.push_back(pole_at(map, std::polar(1.0, tm)));
      }
      nts.push_back(ts[i]);
      nps.push_back(ps[i]);
    }
    ts.swap(nts);
    ps.swap(nps);
    if (ok) break;
    if (pass == 23)
      fail(ErrorCode::ConvergenceFailure, "pole locus unwrapping stalled");
  }

  locus.samples.resize(ts.size());
  double acc = std::arg(ps[0]);
  locus.samples[0] = {ts[0], ps[0], acc};
  bool inc = true, dec = true;
  for (size_t i = 1; i < ts.size(); ++i) {
    double step = std::arg(ps[i] * std::conj(ps[i - 1]));
    if (step > 0) dec = false;
    if (step < 0) inc = false;
    acc += step;
    locus.samples[i] = {ts[i], ps[i], acc};
  }
  locus.limit_start = ps.front();
  locus.limit_end = ps.back();
  locus.monotone = inc || dec;
  locus.increasing = inc;
  locus.total_variation = std::abs(acc - locus.samples[0].arg_unwrapped);

  // distance of the locus to the closed source arc (interior maps avoid it)
  double a = pd.arc_start(locus.arc_index);
  double b = pd.arc_end(locus.arc_index);
  double min_dist = kTwoPi;
  for (const PoleLocusSample& s : locus.samples) {
    double u = wrap_2pi(std::arg(s.p));
    double su = u + kTwoPi * std::ceil((a - u) / kTwoPi);  // into [a, a+2pi)
    double dist;
    if (su <= b)
      dist = 0.0;  // inside the closed arc
    else
      dist = std::min(su - b, a + kTwoPi - su);
    min_dist = std::min(min_dist, dist);
  }
  locus.min_dist_to_closed_arc = min_dist;
  return locus;
}

ProfileReport profile_shape_check(const AnalyticMap& map, const CircleArc& arc,
                                  int n, double delta_frac) {
  if (n < 8) fail(ErrorCode::BadParameter, "need at least 8 profile samples");
  const PolygonData& pd = require_polygon(map);
  containing_arc(pd, arc);
  if (!(delta_frac > 0))
    fail(ErrorCode::BadParameter, "profile margin must be positive");
  const bool exterior = map.pole_at_origin();
  const double len = arc.t_end - arc.t_start;
  const double lo = arc.t_start + delta_frac * len;
  const double hi = arc.t_end - delta_frac * len;

  ProfileReport rep;
  rep.t.resize(n);
  rep.u.resize(n);
  std::vector<double> speed(n);
  for (int i = 0; i < n; ++i) {
    rep.t[i] = lo + (hi - lo) * i / (n - 1);
    speed[i] = boundary_speed(map, rep.t[i]);
    rep.u[i] = 1.0 / std::sqrt(speed[i]);
    rep.scale = std::max(rep.scale, std::abs(rep.u[i]));
  }
  double d2max = -1e300, d2min = 1e300, sp2min = 1e300;
  for (int i = 1; i + 1 < n; ++i) {
    double d2 = rep.u[i - 1] - 2.0 * rep.u[i] + rep.u[i + 1];
    d2max = std::max(d2max, d2);
    d2min = std::min(d2min, d2);
    sp2min = std::min(sp2min, speed[i - 1] - 2.0 * speed[i] + speed[i + 1]);
  }
  rep.max_second_diff = d2max;
  rep.min_second_diff = d2min;
  rep.speed_min_second_diff = sp2min;
  const double tol = 1e-8 * rep.scale;
  rep.profile_ok = exterior ? (d2min >= -tol) : (d2max <= tol);
  return rep;
}

double sturm_residual(const AnalyticMap& map, const CircleArc& arc,
                      double step, double delta_frac) {
  const PolygonData& pd = require_polygon(map);
  containing_arc(pd, arc);
  const double len = arc.t_end - arc.t_start;
  const double lo = arc.t_start + delta_frac * len;
  const double hi = arc.t_end - delta_frac * len;
  auto u = [&](double t) { return 1.0 / std::sqrt(boundary_speed(map, t)); };
  int m = std::max(8, int((hi - lo) / step));
  double worst = 0.0;
  for (int i = 0; i <= m; ++i) {
    double t = lo + (hi - lo) * i / m;
    double upp = (u(t - step) - 2.0 * u(t) + u(t + step)) / (step * step);
    complex z = std::polar(1.0, t);
    complex sphi = -z * z * schwarzian_of(map.derivative_jet(z)) + 0.5;
    worst = std::max(worst, std::abs(upp + 0.5 * sphi.real() * u(t)));
  }
  return worst;
}

double boundary_schwarzian_sign_max(const AnalyticMap& map,
                                    const CircleArc& arc, int n,
                                    double delta_frac) {
  const PolygonData& pd = require_polygon(map);
  containing_arc(pd, arc);
  const bool exterior = map.pole_at_origin();
  const double len = arc.t_end - arc.t_start;
  const double lo = arc.t_start + delta_frac * len;
  const double hi = arc.t_end - delta_frac * len;
  double worst = -1e300;
  for (int i = 0; i < n; ++i) {
    double t = lo + (hi - lo) * i / (n - 1);
    complex z = std::polar(1.0, t);
    complex z2s = z * z * schwarzian_of(map.derivative_jet(z));
    double v = exterior ? (-z2s + 0.5).real() : z2s.real();
    worst = std::max(worst, v);
  }
  return worst;
}

// t -> e^{it} phi(e^{it}) (or e^{it} omega for exterior kinds), safe to
// evaluate arbitrarily close to prevertices. For SC-product kinds both
// reduce to z r/(2 + z r) with r = sum_k alpha_k conj(z_k)/(1 - conj(z_k) z).
std::function<complex(double)> unit_phi_callable(const AnalyticMap& map) {
  const PolygonData* pd = map.polygon();
  const bool exterior = map.pole_at_origin();
  if (pd && map.sc_product_speed()) {
    PolygonData data = *pd;
    return [data](double t) {
      complex z = std::polar(1.0, t);
      complex r = 0.0;
      for (size_t k = 0; k < data.size(); ++k) {
        complex ck = std::conj(data.prevertex(k));
        r += data.exterior_angles[k] * ck / (1.0 - ck * z);
      }
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        return complex(1.0, 0.0);  // exact prevertex hit: the limit of z phi
      return z * r / (2.0 + z * r);
    };
  }
  return [&map, exterior](double t) {
    complex z = std::polar(1.0, t);
    return exterior ? z * omega_of(map, z) : z * phi_of(map, z);
  };
}

std::vector<ExtremalPoint> extremal_points(const AnalyticMap& map) {
  const PolygonData& pd = require_polygon(map);
  const int degree = int(pd.size()) - 1;
  const bool exterior = map.pole_at_origin();

  std::vector<double> roots;
  if (const BlaschkeProduct* b = blaschke_of(map)) {
    roots = circle_level_roots(*b, -1);
  } else {
    roots = circle_level_roots_fn(unit_phi_callable(map), degree, -1);
  }

  std::vector<ExtremalPoint> out;
  for (double r : roots) {
    // locate the containing prevertex arc
    size_t arc_idx = pd.size();
    for (size_t k = 0; k < pd.size(); ++k) {
      double a = pd.arc_start(k), b = pd.arc_end(k);
      double rr = r + kTwoPi * std::ceil((a - r) / kTwoPi);
      if (rr > a && rr < b) {
        arc_idx = k;
        r = rr;
        break;
      }
    }
    if (arc_idx == pd.size())
      fail(ErrorCode::ConvergenceFailure, "extremal root not inside any arc");

    // golden-section extremum of u = speed^{-1/2}: maximum on interior arcs,
    // minimum of v on exterior arcs (v convex, diverges at the endpoints)
    double a = pd.arc_start(arc_idx), b = pd.arc_end(arc_idx);
    double margin = 1e-6 * (b - a);
    double x0 = a + margin, x1 = b - margin;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    auto val = [&](double t) {
      double u = 1.0 / std::sqrt(boundary_speed(map, wrap_2pi(t)));
      return exterior ? u : -u;  // minimize
    };
    double c = x1 - gr * (x1 - x0), d = x0 + gr * (x1 - x0);
    double fc = val(c), fd = val(d);
    while (x1 - x0 > 1e-10) {
      if (fc < fd) {
        x1 = d;
        d = c;
        fd = fc;
        c = x1 - gr * (x1 - x0);
        fc = val(c);
      } else {
        x0 = c;
        c = d;
        fc = fd;
        d = x0 + gr * (x1 - x0);
        fd = val(d);
      }
    }
    double stat = 0.5 * (x0 + x1);

    complex z = std::polar(1.0, r);
    Jet3 j = map.derivative_jet(z);
    double resid = std::abs(1.0 + z * j.f2 / j.f1);
    out.push_back({r, wrap_2pi(stat), resid, arc_idx});
  }
  return out;
}

ArcIntegrals arc_integrals(const AnalyticMap& map, size_t k, double tol) {
  const PolygonData& pd = require_polygon(map);
  if (k >= pd.size()) fail(ErrorCode::BadParameter, "arc index out of range");
  const bool exterior = map.pole_at_origin();
  const double a = pd.arc_start(k), b = pd.arc_end(k), mid = 0.5 * (a + b);
  const double alpha_l = pd.exterior_angles[k];
  const double alpha_r = pd.exterior_angles[(k + 1) % pd.size()];

  // integrate [a, mid] with the singular end mapped to u = 1 at a, then
  // [mid, b] with the singular end at b
  auto half = [&](double from, double to, double alpha, bool inverse) {
    double expo = (exterior != inverse) ? alpha : -alpha;
    return std::abs(to - from) *
           graded_endpoint_integral(
               [&](double u) {
                 double t = from + (to - from) * u;
                 double s = boundary_speed(map, wrap_2pi(t));
                 return inverse ? 1.0 / s : s;
               },
               expo, tol);
  };
  ArcIntegrals out;
  out.speed = half(mid, a, alpha_l, false) + half(mid, b, alpha_r, false);
  out.inverse_speed = half(mid, a, alpha_l, true) + half(mid, b, alpha_r, true);
  return out;
}

TriangleBalance triangle_balance(const AnalyticMap& map, double tol) {
  const PolygonData& pd = require_polygon(map);
  if (pd.size() != 3)
    fail(ErrorCode::NotATriangle, "balance is a triangle statement");
  TriangleBalance tb;
  for (size_t k = 0; k < 3; ++k) {
    ArcIntegrals ai = arc_integrals(map, k);
    tb.speed_int[k] = ai.speed;
    tb.inv_speed_int[k] = ai.inverse_speed;
    tb.ratio[k] = ai.speed / ai.inverse_speed;
  }
  double rmin = *std::min_element(tb.ratio.begin(), tb.ratio.end());
  double rmax = *std::max_element(tb.ratio.begin(), tb.ratio.end());
  tb.spread = rmax / rmin - 1.0;
  tb.balanced = tb.spread < tol;

  if (const PrecomposeInfo* info = map.precompose_info()) {
    tb.is_precomposed = true;
    TriangleBalance base = triangle_balance(*info->base, tol);
    tb.c_const = (base.ratio[0] + base.ratio[1] + base.ratio[2]) / 3.0;
    tb.a_abs = std::abs(info->a);
    tb.b = (1.0 + tb.a_abs) / (1.0 - tb.a_abs);
    double b2 = tb.b * tb.b;
    bool all = true;
    for (size_t j = 0; j < 3; ++j) {
      tb.lower_link[j] = {tb.c_const / b2, tb.inv_speed_int[j],
                          tb.c_const / b2 <= tb.inv_speed_int[j] * (1.0 + 1e-12)};
      tb.upper_link[j] = {tb.speed_int[j], tb.c_const * b2 * tb.inv_speed_int[j],
                          tb.speed_int[j] <=
                              tb.c_const * b2 * tb.inv_speed_int[j] * (1.0 + 1e-12)};
      tb.middle_link[j] = {tb.inv_speed_int[j], tb.speed_int[j],
                           tb.inv_speed_int[j] <= tb.speed_int[j] * (1.0 + 1e-12)};
      tb.ratio_bounds[j] = {tb.c_const / b2, tb.c_const * b2,
                            tb.ratio[j] >= tb.c_const / b2 * (1.0 - 1e-12) &&
                                tb.ratio[j] <= tb.c_const * b2 * (1.0 + 1e-12)};
      all = all && tb.lower_link[j].holds && tb.upper_link[j].holds;
    }
    tb.sandwich_holds = all;
  }
  return tb;
}

}  // namespace bma
