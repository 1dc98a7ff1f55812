#include "bma/blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "bma/error.hpp"

namespace bma {

BlaschkeProduct::BlaschkeProduct(std::vector<complex> zeros, complex rotation)
    : zeros_(std::move(zeros)), rotation_(rotation) {
  for (const complex& a : zeros_)
    if (std::abs(a) >= 1.0)
      fail(ErrorCode::BadParameter, "Blaschke zero not inside the unit disk");
  double r = std::abs(rotation_);
  if (std::abs(r - 1.0) > 1e-12)
    fail(ErrorCode::BadParameter, "Blaschke rotation must be unimodular");
  rotation_ /= r;
}

complex BlaschkeProduct::eval(complex z) const {
  complex p = rotation_;
  for (const complex& a : zeros_) p *= (z - a) / (1.0 - std::conj(a) * z);
  return p;
}

Jet3 BlaschkeProduct::jet(complex z) const {
  Jet3 p = jet_const(rotation_);
  Jet3 id = jet_var(z);
  for (const complex& a : zeros_) p = p * ((id - a) / (1.0 - std::conj(a) * id));
  return p;
}

double boundary_log_derivative(const BlaschkeProduct& b, double t) {
  complex zeta = std::polar(1.0, t);
  Jet3 j = b.jet(zeta);
  complex w = zeta * j.f1 / j.f0;
  if (std::abs(w.imag()) > 1e-10 * (1.0 + std::abs(w.real())) ||
      w.real() < -1e-10)
    fail(ErrorCode::AssertionFailure,
         "zB'/B not a positive real on the circle");
  return w.real();
}

std::vector<double> circle_level_roots(const BlaschkeProduct& b, int target) {
  auto zphi = [&b](double t) {
    complex z = std::polar(1.0, t);
    return z * b.eval(z);
  };
  auto darg = [&b](double t) { return 1.0 + boundary_log_derivative(b, t); };
  return circle_level_roots_fn(zphi, b.degree(), target, darg);
}

std::vector<double> circle_level_roots_fn(
    const std::function<complex(double)>& zphi, int degree, int target,
    const std::function<double(double)>& darg) {
  if (target != 1 && target != -1)
    fail(ErrorCode::BadParameter, "level target must be +1 or -1");
  const double two_pi = 2.0 * M_PI;
  const complex target_c(double(target), 0.0);
  const double theta_target = (target == 1) ? 0.0 : M_PI;

  // unwrapped argument table; refine until steps stay below pi/4.
  // The grid is offset so that structurally special angles (prevertices
  // at 0, symmetric configurations) never coincide with sample points.
  const double offset = 1.2345678987654321e-4;
  int n = std::max(512, 128 * (degree + 1));
  std::vector<double> ts, args;
  for (int attempt = 0;; ++attempt) {
    ts.assign(n + 1, 0.0);
    args.assign(n + 1, 0.0);
    ts[0] = offset;
    complex prev = zphi(offset);
    args[0] = std::arg(prev);
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      ts[i] = offset + two_pi * i / n;
      complex cur = zphi(ts[i]);
      double step = std::arg(cur * std::conj(prev));
      if (step > M_PI / 4.0 || step < -1e-9) {
        ok = false;
        break;
      }
      args[i] = args[i - 1] + step;
      prev = cur;
    }
    if (ok) break;
    n *= 2;
    if (attempt > 12)
      fail(ErrorCode::ConvergenceFailure,
           "argument of z*phi is not resolvable/monotone on the circle");
  }
  double total = args[n] - args[0];
  if (std::abs(total - two_pi * (degree + 1)) > 1e-6)
    fail(ErrorCode::ConvergenceFailure,
         "total argument increase of z*phi does not match the degree");

  std::vector<double> roots;
  int count = degree + 1;
  double m0 = std::ceil((args[0] - theta_target) / two_pi - 1e-12);
  for (int m = 0; m < count; ++m) {
    double v = theta_target + two_pi * (m0 + m);
    // bracket from the table
    auto it = std::upper_bound(args.begin(), args.end(), v);
    int hi = int(it - args.begin());
    if (hi == 0) hi = 1;
    if (hi > n) hi = n;
    int lo = hi - 1;
    double tl = ts[lo], th = ts[hi];
    complex wl = zphi(tl);
    double al = args[lo];
    // local continuous argument relative to the bracket's left sample
    auto local_arg = [&](double t) { return al + std::arg(zphi(t) * std::conj(wl)); };
    for (int it2 = 0; it2 < 80 && th - tl > 1e-15; ++it2) {
      double tm = 0.5 * (tl + th);
      if (local_arg(tm) < v)
        tl = tm;
      else
        th = tm;
    }
    double t = 0.5 * (tl + th);
    double slope = darg ? 0.0 : (args[hi] - args[lo]) / (ts[hi] - ts[lo]);
    for (int it3 = 0; it3 < 3; ++it3) {
      double rho = std::arg(zphi(t) * double(target));
      double d = darg ? darg(t) : slope;
      if (d <= 0.0) break;
      t -= rho / d;
    }
    double tn = std::fmod(t, two_pi);
    if (tn < 0) tn += two_pi;
    if (std::abs(zphi(tn) - target_c) > 1e-12)
      fail(ErrorCode::ConvergenceFailure, "level root residual too large");
    roots.push_back(tn);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace bma
