#include "bma/moebius.hpp"

#include "bma/error.hpp"

namespace bma {

namespace {

void require_nondegenerate(const Moebius& t) {
  if (t.det() == complex(0.0, 0.0))
    fail(ErrorCode::DegenerateTransform, "Moebius transform has ad - bc = 0");
}

}  // namespace

Moebius moebius_checked(complex a, complex b, complex c, complex d) {
  Moebius t{a, b, c, d};
  require_nondegenerate(t);
  return t;
}

ExtendedComplex moebius_apply(const Moebius& t, const ExtendedComplex& z) {
  require_nondegenerate(t);
  if (z.infinite) {
    if (t.c == complex(0.0, 0.0)) return ExtendedComplex::inf();
    return ExtendedComplex::of(t.a / t.c);
  }
  complex num = t.a * z.value + t.b;
  complex den = t.c * z.value + t.d;
  if (den == complex(0.0, 0.0)) return ExtendedComplex::inf();
  return ExtendedComplex::of(num / den);
}

Moebius moebius_compose(const Moebius& t, const Moebius& s) {
  require_nondegenerate(t);
  require_nondegenerate(s);
  return {t.a * s.a + t.b * s.c, t.a * s.b + t.b * s.d,
          t.c * s.a + t.d * s.c, t.c * s.b + t.d * s.d};
}

Moebius moebius_invert(const Moebius& t) {
  require_nondegenerate(t);
  return {t.d, -t.b, -t.c, t.a};
}

ExtendedComplex moebius_pole(const Moebius& t) {
  require_nondegenerate(t);
  if (t.c == complex(0.0, 0.0)) return ExtendedComplex::inf();
  return ExtendedComplex::of(-t.d / t.c);
}

Jet3 moebius_jet(const Moebius& t, complex w) {
  require_nondegenerate(t);
  complex den = t.c * w + t.d;
  if (den == complex(0.0, 0.0))
    fail(ErrorCode::SingularPoint, "Moebius jet requested at the pole");
  complex det = t.det();
  complex d2 = den * den;
  Jet3 j;
  j.f0 = (t.a * w + t.b) / den;
  j.f1 = det / d2;
  j.f2 = -2.0 * t.c * det / (d2 * den);
  j.f3 = 6.0 * t.c * t.c * det / (d2 * d2);
  return j;
}

}  // namespace bma
