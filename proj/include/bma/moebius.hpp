#pragma once

#include <cmath>

#include "bma/jet.hpp"

namespace bma {

// finite complex value or the point at infinity
struct ExtendedComplex {
  complex value{};
  bool infinite = false;

  static ExtendedComplex inf() { return {complex{}, true}; }
  static ExtendedComplex of(complex v) { return {v, false}; }
};

inline bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return a.value == b.value;
}

// z -> (az + b)/(cz + d), ad - bc != 0
struct Moebius {
  complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  complex det() const { return a * d - b * c; }
  static Moebius identity() { return {}; }
};

Moebius moebius_checked(complex a, complex b, complex c, complex d);
ExtendedComplex moebius_apply(const Moebius& t, const ExtendedComplex& z);
inline ExtendedComplex moebius_apply(const Moebius& t, complex z) {
  return moebius_apply(t, ExtendedComplex::of(z));
}
Moebius moebius_compose(const Moebius& t, const Moebius& s);  // t after s
Moebius moebius_invert(const Moebius& t);
ExtendedComplex moebius_pole(const Moebius& t);

// jet of the transform at a finite point w (not the pole)
Jet3 moebius_jet(const Moebius& t, complex w);

}  // namespace bma
