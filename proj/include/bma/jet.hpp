#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "bma/error.hpp"

namespace bma {

using complex = std::complex<double>;

// Value and first three derivatives of an analytic function at a point.
// All arithmetic below is truncated-Taylor (3-jet) arithmetic, exact to
// third order; no numeric differentiation happens here.
struct Jet3 {
  complex f0{}, f1{}, f2{}, f3{};
};

inline Jet3 jet_const(complex c) { return {c, 0.0, 0.0, 0.0}; }
// jet of z -> z at zeta
inline Jet3 jet_var(complex zeta) { return {zeta, 1.0, 0.0, 0.0}; }

inline bool jet_finite(const Jet3& j) {
  return std::isfinite(j.f0.real()) && std::isfinite(j.f0.imag()) &&
         std::isfinite(j.f1.real()) && std::isfinite(j.f1.imag()) &&
         std::isfinite(j.f2.real()) && std::isfinite(j.f2.imag()) &&
         std::isfinite(j.f3.real()) && std::isfinite(j.f3.imag());
}

namespace detail {

// Taylor coefficients c_k = f^(k)/k!
using Coeffs = std::array<complex, 4>;

inline Coeffs coeffs(const Jet3& j) {
  return {j.f0, j.f1, j.f2 / 2.0, j.f3 / 6.0};
}

inline Jet3 jet(const Coeffs& c) {
  return {c[0], c[1], 2.0 * c[2], 6.0 * c[3]};
}

}  // namespace detail

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.f0 + b.f0, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.f0 - b.f0, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3};
}
inline Jet3 operator-(const Jet3& a) { return {-a.f0, -a.f1, -a.f2, -a.f3}; }
inline Jet3 operator*(const Jet3& a, complex s) {
  return {a.f0 * s, a.f1 * s, a.f2 * s, a.f3 * s};
}
inline Jet3 operator*(complex s, const Jet3& a) { return a * s; }
inline Jet3 operator+(const Jet3& a, complex c) {
  return {a.f0 + c, a.f1, a.f2, a.f3};
}
inline Jet3 operator+(complex c, const Jet3& a) { return a + c; }
inline Jet3 operator-(const Jet3& a, complex c) { return a + (-c); }
inline Jet3 operator-(complex c, const Jet3& a) { return (-a) + c; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  auto x = detail::coeffs(a);
  auto y = detail::coeffs(b);
  detail::Coeffs c;
  c[0] = x[0] * y[0];
  c[1] = x[0] * y[1] + x[1] * y[0];
  c[2] = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
  c[3] = x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0];
  return detail::jet(c);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.f0 == complex(0.0, 0.0))
    fail(ErrorCode::DivisionByZero, "jet division by a jet with zero value");
  auto x = detail::coeffs(a);
  auto y = detail::coeffs(b);
  detail::Coeffs c;
  c[0] = x[0] / y[0];
  c[1] = (x[1] - c[0] * y[1]) / y[0];
  c[2] = (x[2] - c[0] * y[2] - c[1] * y[1]) / y[0];
  c[3] = (x[3] - c[0] * y[3] - c[1] * y[2] - c[2] * y[1]) / y[0];
  return detail::jet(c);
}

inline Jet3 operator/(complex s, const Jet3& b) { return jet_const(s) / b; }
inline Jet3 operator/(const Jet3& a, complex s) { return a * (1.0 / s); }

inline Jet3 exp(const Jet3& a) {
  auto x = detail::coeffs(a);
  detail::Coeffs e;
  e[0] = std::exp(x[0]);
  e[1] = x[1] * e[0];
  e[2] = (x[1] * e[1] + 2.0 * x[2] * e[0]) / 2.0;
  e[3] = (x[1] * e[2] + 2.0 * x[2] * e[1] + 3.0 * x[3] * e[0]) / 3.0;
  return detail::jet(e);
}

// principal branch; rejects values on (-inf, 0]
inline Jet3 log(const Jet3& a) {
  if (a.f0.imag() == 0.0 && a.f0.real() <= 0.0)
    fail(ErrorCode::BranchCut, "principal log undefined at jet value");
  auto x = detail::coeffs(a);
  detail::Coeffs l;
  l[0] = std::log(x[0]);
  l[1] = x[1] / x[0];
  l[2] = (2.0 * x[2] - l[1] * x[1]) / (2.0 * x[0]);
  l[3] = (3.0 * x[3] - l[1] * x[2] - 2.0 * l[2] * x[1]) / (3.0 * x[0]);
  return detail::jet(l);
}

inline Jet3 pow(const Jet3& a, double r) { return exp(log(a) * complex(r, 0.0)); }

// 3-jet of g∘f from the jet of g at f.f0 (Faa di Bruno to order 3)
inline Jet3 compose(const Jet3& outer, const Jet3& inner) {
  Jet3 r;
  r.f0 = outer.f0;
  r.f1 = outer.f1 * inner.f1;
  r.f2 = outer.f2 * inner.f1 * inner.f1 + outer.f1 * inner.f2;
  r.f3 = outer.f3 * inner.f1 * inner.f1 * inner.f1 +
         3.0 * outer.f2 * inner.f1 * inner.f2 + outer.f1 * inner.f3;
  return r;
}

// as compose(), but verifies the anchoring contract outer = jet of g at inner.f0
inline Jet3 compose_checked(const Jet3& outer, complex outer_point,
                            const Jet3& inner) {
  if (outer_point != inner.f0)
    fail(ErrorCode::JetMismatch, "outer jet not anchored at inner jet value");
  return compose(outer, inner);
}

// Sf = f'''/f' - (3/2)(f''/f')^2
inline complex schwarzian_of(const Jet3& j) {
  if (j.f1 == complex(0.0, 0.0))
    fail(ErrorCode::CriticalPoint, "Schwarzian undefined where f' = 0");
  complex q = j.f2 / j.f1;
  return j.f3 / j.f1 - 1.5 * q * q;
}

// f(zeta + h) predicted by the jet
inline complex taylor_eval(const Jet3& j, complex h) {
  return j.f0 + h * (j.f1 + h * (j.f2 / 2.0 + h * j.f3 / 6.0));
}

}  // namespace bma
