#include "bma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bma/error.hpp"

namespace bma {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < eps) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

std::mutex rule_mutex;
std::map<int, GaussLegendreRule> rule_cache;

template <class V, class F, class X>
V composite_gl(const F& f, X a, X b, int panels, int order) {
  const GaussLegendreRule& gl = gauss_legendre(order);
  V total{};
  for (int p = 0; p < panels; ++p) {
    X lo = a + (b - a) * (double(p) / panels);
    X hi = a + (b - a) * (double(p + 1) / panels);
    X mid = (lo + hi) * 0.5;
    X half = (hi - lo) * 0.5;
    V s{};
    for (size_t i = 0; i < gl.x.size(); ++i)
      s += V(f(mid + half * gl.x[i])) * gl.w[i];
    total += s * half;
  }
  return total;
}

template <class V, class F, class X>
V doubling_integrate(const F& f, X a, X b, double tol, int max_doublings,
                     int order) {
  V prev = composite_gl<V>(f, a, b, 1, order);
  for (int k = 1; k <= max_doublings; ++k) {
    V cur = composite_gl<V>(f, a, b, 1 << k, order);
    if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  fail(ErrorCode::QuadratureFailure,
       "panel doubling did not reach requested tolerance");
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(rule_mutex);
  auto it = rule_cache.find(n);
  if (it == rule_cache.end()) it = rule_cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

namespace {

complex gl_panel(const std::function<complex(complex)>& f, complex a, complex b,
                 const GaussLegendreRule& gl) {
  complex mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) s += f(mid + half * gl.x[i]) * gl.w[i];
  return s * half;
}

complex adapt_seg(const std::function<complex(complex)>& f, complex a, complex b,
                  double tol, int depth, double min_panel,
                  const GaussLegendreRule& g8, const GaussLegendreRule& g16) {
  complex i16 = gl_panel(f, a, b, g16);
  complex i8 = gl_panel(f, a, b, g8);
  // floors keep roundoff-dominated panels from recursing forever
  if (std::abs(i16 - i8) <= std::max(tol, 5e-16 * (1.0 + std::abs(i16))))
    return i16;
  if (std::abs(b - a) <= min_panel) return i16;
  if (depth <= 0)
    fail(ErrorCode::QuadratureFailure, "adaptive segment quadrature exhausted");
  complex m = 0.5 * (a + b);
  return adapt_seg(f, a, m, 0.5 * tol, depth - 1, min_panel, g8, g16) +
         adapt_seg(f, m, b, 0.5 * tol, depth - 1, min_panel, g8, g16);
}

}  // namespace

complex integrate_segment(const std::function<complex(complex)>& f, complex z0,
                          complex z1, double tol, int max_depth,
                          double min_panel) {
  if (z0 == z1) return {0.0, 0.0};
  const GaussLegendreRule& g8 = gauss_legendre(8);
  const GaussLegendreRule& g16 = gauss_legendre(16);
  return adapt_seg(f, z0, z1, tol, max_depth, min_panel, g8, g16);
}

namespace {

complex nested_panel(const std::function<complex(complex)>& inner,
                     const std::function<complex(complex, complex)>& outer,
                     complex a, complex b, complex q_a,
                     const GaussLegendreRule& inner_gl,
                     const GaussLegendreRule& gl) {
  complex mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    complex pt = mid + half * gl.x[i];
    complex q = q_a + gl_panel(inner, a, pt, inner_gl);
    s += outer(pt, q) * gl.w[i];
  }
  return s * half;
}

complex nested_adapt(const std::function<complex(complex)>& inner,
                     const std::function<complex(complex, complex)>& outer,
                     complex a, complex b, complex q_a, double tol, int depth,
                     double min_panel, const GaussLegendreRule& g8,
                     const GaussLegendreRule& g16) {
  complex i16 = nested_panel(inner, outer, a, b, q_a, g16, g16);
  complex i8 = nested_panel(inner, outer, a, b, q_a, g8, g8);
  if (std::abs(i16 - i8) <= std::max(tol, 5e-16 * (1.0 + std::abs(i16))))
    return i16;
  if (std::abs(b - a) <= min_panel) return i16;
  if (depth <= 0)
    fail(ErrorCode::QuadratureFailure, "adaptive nested quadrature exhausted");
  complex m = 0.5 * (a + b);
  // the accumulated inner value must be accurate on its own
  complex q_m = q_a + adapt_seg(inner, a, m, std::max(1e-13, 0.01 * tol),
                                depth, min_panel, g8, g16);
  return nested_adapt(inner, outer, a, m, q_a, 0.5 * tol, depth - 1, min_panel,
                      g8, g16) +
         nested_adapt(inner, outer, m, b, q_m, 0.5 * tol, depth - 1, min_panel,
                      g8, g16);
}

}  // namespace

complex integrate_with_inner(const std::function<complex(complex)>& inner,
                             const std::function<complex(complex, complex)>& outer,
                             complex zeta, double tol, int max_depth,
                             double min_panel) {
  if (zeta == complex(0.0, 0.0)) return {0.0, 0.0};
  const GaussLegendreRule& g8 = gauss_legendre(8);
  const GaussLegendreRule& g16 = gauss_legendre(16);
  return nested_adapt(inner, outer, complex(0.0, 0.0), zeta, complex(0.0, 0.0),
                      tol, max_depth, min_panel, g8, g16);
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_doublings) {
  if (a == b) return 0.0;
  return doubling_integrate<double>(f, a, b, tol, max_doublings, 16);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adsimp(const std::function<double(double)>& f, double a, double fa,
              double b, double fb, double m, double fm, double whole,
              double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0)
    fail(ErrorCode::QuadratureFailure, "adaptive Simpson depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adsimp(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adsimp(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  // unequal seed panels so periodic integrands cannot alias the first split
  const double fr[] = {0.0,        0.13579246, 0.27182818, 0.38196601,
                       0.57721566, 0.71828183, 0.86602540, 1.0};
  double total = 0.0;
  for (int i = 0; i + 1 < 8; ++i) {
    double lo = a + (b - a) * fr[i], hi = a + (b - a) * fr[i + 1];
    double m = 0.5 * (lo + hi);
    double fa = f(lo), fb = f(hi), fm = f(m);
    total += adsimp(f, lo, fa, hi, fb, m, fm, simpson(lo, fa, hi, fb, fm),
                    abs_tol * (fr[i + 1] - fr[i]), max_depth);
  }
  return total;
}

namespace {

// shared skeleton of the graded integrators; V is double or complex
template <class V, class F>
V graded_impl(const F& f, double e, double tol, int max_levels) {
  auto feval = [&](double t) {
    if constexpr (std::is_same_v<V, complex>)
      return f(complex(t, 0.0));
    else
      return f(t);
  };
  // analytic stretch [0, 1/2]
  V total = doubling_integrate<V>(feval, 0.0, 0.5, tol, 14, 16);
  V prev_total{};
  bool have_prev = false;
  double scale = std::abs(total) + 1.0;
  for (int j = 1; j <= max_levels; ++j) {
    double lo = 1.0 - std::ldexp(1.0, -j);
    double hi = 1.0 - std::ldexp(1.0, -j - 1);
    total += composite_gl<V>(feval, lo, hi, 1, 16);
    scale = std::max(scale, std::abs(total));
    if (j < 6) continue;
    // two-term tail: H(t) = f(t) (1-t)^{-e} extrapolated linearly to t = 1
    double delta = std::ldexp(1.0, -j - 1);
    double ta = 1.0 - delta, tb = 1.0 - 0.5 * delta;
    V ha = V(feval(ta)) * std::pow(delta, -e);
    V hb = V(feval(tb)) * std::pow(0.5 * delta, -e);
    V h0 = 2.0 * hb - ha;
    V h1 = (ha - hb) / (0.5 * delta);
    V tail = h0 * std::pow(delta, 1.0 + e) / (1.0 + e) +
             h1 * std::pow(delta, 2.0 + e) / (2.0 + e);
    V cur = total + tail;
    if (have_prev && std::abs(cur - prev_total) <= tol * scale) return cur;
    prev_total = cur;
    have_prev = true;
  }
  fail(ErrorCode::QuadratureFailure,
       "graded endpoint quadrature did not converge");
}

}  // namespace

double graded_endpoint_integral(const std::function<double(double)>& f,
                                double e, double tol, int max_levels) {
  return graded_impl<double>(f, e, tol, max_levels);
}

complex graded_endpoint_integral_c(const std::function<complex(complex)>& f,
                                   double e, double tol, int max_levels) {
  return graded_impl<complex>(f, e, tol, max_levels);
}

complex expm1c(complex w) {
  if (std::abs(w) > 0.25) return std::exp(w) - 1.0;
  // Taylor series, |w| <= 1/4: 18 terms reach full double precision
  complex sum = 0.0, term = 1.0;
  for (int n = 1; n <= 18; ++n) {
    term *= w / double(n);
    sum += term;
  }
  return sum;
}

}  // namespace bma
