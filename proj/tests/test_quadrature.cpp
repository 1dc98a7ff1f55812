#include "bma/quadrature.hpp"

#include <cmath>

#include "bma/error.hpp"
#include "doctest.h"

using namespace bma;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1") {
  const GaussLegendreRule& gl = gauss_legendre(16);
  REQUIRE(gl.x.size() == 16);
  // int_{-1}^{1} x^k dx
  for (int k = 0; k <= 31; ++k) {
    double s = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * std::pow(gl.x[i], k);
    double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-13);
  }
}

TEST_CASE("segment quadrature on an entire function") {
  complex v = integrate_segment([](complex z) { return std::exp(z); },
                                complex(0.0, 0.0), complex(0.3, 0.7));
  complex exact = std::exp(complex(0.3, 0.7)) - 1.0;
  CHECK(std::abs(v - exact) < 1e-13);
}

TEST_CASE("adaptive Simpson hits its absolute tolerance") {
  double v = adaptive_simpson([](double t) { return std::sin(3.0 * t) * std::sin(3.0 * t); },
                              0.0, M_PI, 1e-11);
  CHECK(std::abs(v - M_PI / 2.0) < 1e-10);
}

TEST_CASE("graded endpoint quadrature with an algebraic singularity") {
  // int_0^1 (1-t)^{-1/2} dt = 2
  double v = graded_endpoint_integral(
      [](double t) { return std::pow(1.0 - t, -0.5); }, -0.5, 1e-12);
  CHECK(std::abs(v - 2.0) < 1e-11);

  // int_0^1 (1-t)^{-0.7} cos(t) dt  (oracle: series of cos about t=1)
  // cos(t) = cos(1)cos(1-t) + sin(1)sin(1-t); expand in powers of (1-t):
  // I = sum_m [cos(1) (-1)^m/(2m)! * 1/(2m+0.3) + sin(1) (-1)^m/(2m+1)! * 1/(2m+1.3)]
  double oracle = 0.0;
  double fact = 1.0;
  for (int m = 0; m <= 12; ++m) {
    double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    double f2m = fact;                         // (2m)!
    double f2m1 = fact * (2.0 * m + 1.0);      // (2m+1)!
    oracle += std::cos(1.0) * sgn / (f2m * (2.0 * m + 0.3));
    oracle += std::sin(1.0) * sgn / (f2m1 * (2.0 * m + 1.3));
    fact *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
  }
  double v2 = graded_endpoint_integral(
      [](double t) { return std::pow(1.0 - t, -0.7) * std::cos(t); }, -0.7,
      1e-12);
  CHECK(std::abs(v2 - oracle) < 1e-10);

  // regular vanishing endpoint: int_0^1 (1-t)^{0.4} dt = 1/1.4
  double v3 = graded_endpoint_integral(
      [](double t) { return std::pow(1.0 - t, 0.4); }, 0.4, 1e-12);
  CHECK(std::abs(v3 - 1.0 / 1.4) < 1e-11);
}

TEST_CASE("expm1c agrees with exp - 1 yet keeps small-argument accuracy") {
  complex w(1e-9, -2e-9);
  complex v = expm1c(w);
  // exp(w) - 1 = w + w^2/2 + ...
  CHECK(std::abs(v - (w + 0.5 * w * w)) < 1e-25);
  complex big(0.7, 1.1);
  CHECK(std::abs(expm1c(big) - (std::exp(big) - 1.0)) < 1e-15);
}
