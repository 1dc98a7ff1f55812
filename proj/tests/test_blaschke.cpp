#include "bma/blaschke.hpp"

#include <cmath>

#include "bma/error.hpp"
#include "bma/quadrature.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bma;
using testutil::fd_jet;
using testutil::rand_in_disk;
using testutil::rand_uniform;

namespace {

BlaschkeProduct random_product(int degree) {
  std::vector<complex> zeros;
  for (int i = 0; i < degree; ++i) zeros.push_back(rand_in_disk(0.7));
  return BlaschkeProduct(std::move(zeros), testutil::rand_unimodular());
}

}  // namespace

TEST_CASE("monomial jets: B = z^3") {
  BlaschkeProduct b({0.0, 0.0, 0.0});
  complex z(0.4, -0.3);
  Jet3 j = b.jet(z);
  CHECK(std::abs(j.f0 - z * z * z) < 1e-15);
  CHECK(std::abs(j.f1 - 3.0 * z * z) < 1e-15);
  CHECK(std::abs(j.f2 - 6.0 * z) < 1e-15);
  CHECK(std::abs(j.f3 - 6.0) < 1e-15);
}

TEST_CASE("single zero: B(0) = -0.5 rotation") {
  BlaschkeProduct b({complex(0.5, 0.0)});
  CHECK(std::abs(b.eval(complex(0.0, 0.0)) + 0.5) < 1e-16);
  BlaschkeProduct br({complex(0.5, 0.0)}, std::polar(1.0, 1.2));
  CHECK(std::abs(br.eval(complex(0.0, 0.0)) + 0.5 * std::polar(1.0, 1.2)) < 1e-16);
}

TEST_CASE("|B| = 1 on the circle, |B| < 1 inside") {
  for (int deg = 1; deg <= 5; ++deg) {
    BlaschkeProduct b = random_product(deg);
    for (int i = 0; i < 40; ++i) {
      complex z = std::polar(1.0, rand_uniform(0.0, 2.0 * M_PI));
      CHECK(std::abs(std::abs(b.eval(z)) - 1.0) < 1e-13);
      complex w = rand_in_disk(0.95);
      CHECK(std::abs(b.eval(w)) < 1.0);
    }
  }
}

TEST_CASE("jets agree with finite differences") {
  BlaschkeProduct b = random_product(4);
  for (int i = 0; i < 10; ++i) {
    complex z = rand_in_disk(0.6);
    Jet3 j = b.jet(z);
    Jet3 o = fd_jet([&](complex w) { return b.eval(w); }, z);
    CHECK(testutil::jet_distance(j, o) < 1e-6);
  }
}

TEST_CASE("boundary log-derivative: monomial and single-zero values") {
  BlaschkeProduct b3({0.0, 0.0, 0.0});
  for (double t : {0.0, 0.7, 2.2, 5.0}) {
    CHECK(boundary_log_derivative(b3, t) == doctest::Approx(3.0).epsilon(1e-13));
  }
  BlaschkeProduct b1({complex(0.5, 0.0)});
  CHECK(boundary_log_derivative(b1, 0.0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("boundary log-derivative sum rule") {
  for (int deg : {1, 2, 4}) {
    BlaschkeProduct b = random_product(deg);
    for (int i = 0; i < 20; ++i) {
      double t = rand_uniform(0.0, 2.0 * M_PI);
      complex z = std::polar(1.0, t);
      double expect = 0.0;
      for (const complex& a : b.zeros())
        expect += (1.0 - std::norm(a)) / std::norm(z - a);
      CHECK(std::abs(boundary_log_derivative(b, t) - expect) < 1e-11 * (1.0 + expect));
    }
  }
}

TEST_CASE("circle level roots of z^3 at ±1") {
  BlaschkeProduct b({0.0, 0.0, 0.0});
  std::vector<double> plus = circle_level_roots(b, 1);
  REQUIRE(plus.size() == 4);
  for (size_t k = 0; k < 4; ++k)
    CHECK(plus[k] == doctest::Approx(k * M_PI / 2).epsilon(1e-13));
  std::vector<double> minus = circle_level_roots(b, -1);
  REQUIRE(minus.size() == 4);
  for (size_t k = 0; k < 4; ++k)
    CHECK(minus[k] == doctest::Approx(M_PI / 4 + k * M_PI / 2).epsilon(1e-13));
}

TEST_CASE("generic roots: residuals, interlacing, argument monotonicity") {
  BlaschkeProduct b({complex(0.5, 0.0), complex(0.0, -0.3)});
  std::vector<double> plus = circle_level_roots(b, 1);
  std::vector<double> minus = circle_level_roots(b, -1);
  REQUIRE(plus.size() == 3);
  REQUIRE(minus.size() == 3);
  for (double t : plus) {
    complex z = std::polar(1.0, t);
    CHECK(std::abs(z * b.eval(z) - 1.0) < 1e-12);
  }
  for (double t : minus) {
    complex z = std::polar(1.0, t);
    CHECK(std::abs(z * b.eval(z) + 1.0) < 1e-12);
  }
  // sign change of arg(zB) across each +1 root, scanned densely
  // interlacing: exactly one -1 root in each arc between consecutive +1 roots
  for (size_t k = 0; k < plus.size(); ++k) {
    double a = plus[k];
    double bnd = (k + 1 < plus.size()) ? plus[k + 1] : plus[0] + 2.0 * M_PI;
    int inside = 0;
    for (double m : minus) {
      double mm = m;
      while (mm < a) mm += 2.0 * M_PI;
      if (mm > a && mm < bnd) ++inside;
    }
    CHECK(inside == 1);
  }

  // unwrapped argument of zB increases by 2pi(deg+1) and monotonically
  int n = 4096;
  double prev = std::arg(b.eval(complex(1.0, 0.0)));
  double total = 0.0;
  bool monotone = true;
  for (int i = 1; i <= n; ++i) {
    double t = 2.0 * M_PI * i / n;
    complex w = std::polar(1.0, t) * b.eval(std::polar(1.0, t));
    double cur = std::arg(w);
    double step = cur - prev;
    while (step <= -M_PI) step += 2.0 * M_PI;
    while (step > M_PI) step -= 2.0 * M_PI;
    if (step <= 0) monotone = false;
    total += step;
    prev = cur;
  }
  CHECK(monotone);
  CHECK(std::abs(total - 2.0 * M_PI * 3) < 1e-9);
}

TEST_CASE("scan-validated roots for a degree-2 product") {
  // brute force: count sign changes of arg(zB * conj(target)) on a fine grid
  BlaschkeProduct b({complex(0.5, 0.0), complex(0.0, -0.3)});
  std::vector<double> roots = circle_level_roots(b, -1);
  int n = 10000;
  std::vector<double> crossings;
  for (int i = 0; i < n; ++i) {
    double t0 = 2.0 * M_PI * i / n, t1 = 2.0 * M_PI * (i + 1) / n;
    auto f = [&](double t) {
      complex z = std::polar(1.0, t);
      return std::arg(-z * b.eval(z));
    };
    double a = f(t0), c = f(t1);
    if (a > M_PI / 2 && c < -M_PI / 2) continue;  // branch jump, not a crossing
    if ((a <= 0 && c > 0) || (a == 0)) crossings.push_back(t0);
  }
  REQUIRE(crossings.size() == roots.size());
  for (size_t k = 0; k < roots.size(); ++k)
    CHECK(std::abs(crossings[k] - roots[k]) < 2.0 * M_PI / n + 1e-12);
}

TEST_CASE("arc-length identity: int |B'| over a prevertex arc") {
  BlaschkeProduct b({complex(0.3, 0.2), complex(-0.1, -0.4), complex(0.25, 0.0)});
  std::vector<double> prevs = circle_level_roots(b, 1);
  REQUIRE(prevs.size() == 4);
  for (size_t k = 0; k < prevs.size(); ++k) {
    double a = prevs[k];
    double c = (k + 1 < prevs.size()) ? prevs[k + 1] : prevs[0] + 2.0 * M_PI;
    double integral = integrate_interval(
        [&](double t) { return boundary_log_derivative(b, t); }, a, c, 1e-11);
    CHECK(std::abs(integral - (2.0 * M_PI - (c - a))) < 1e-8);
  }
}

TEST_CASE("degenerate degree 0 is allowed and zB = c has one root") {
  BlaschkeProduct b({}, std::polar(1.0, 0.9));
  CHECK(b.degree() == 0);
  std::vector<double> roots = circle_level_roots(b, 1);
  REQUIRE(roots.size() == 1);
  complex z = std::polar(1.0, roots[0]);
  CHECK(std::abs(z * b.eval(z) - 1.0) < 1e-12);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(BlaschkeProduct({complex(1.0, 0.0)}), Error);
  CHECK_THROWS_AS(BlaschkeProduct({complex(0.2, 0.0)}, complex(0.5, 0.0)), Error);
}

TEST_CASE("level roots for random products with zeros near the boundary") {
  for (int trial = 0; trial < 8; ++trial) {
    int deg = 1 + trial % 6;
    std::vector<complex> zeros;
    for (int i = 0; i < deg; ++i) zeros.push_back(rand_in_disk(0.93));
    BlaschkeProduct b(std::move(zeros), testutil::rand_unimodular());
    for (int target : {1, -1}) {
      std::vector<double> roots = circle_level_roots(b, target);
      REQUIRE(int(roots.size()) == deg + 1);
      for (double t : roots) {
        complex z = std::polar(1.0, t);
        CHECK(std::abs(z * b.eval(z) - double(target)) < 1e-12);
      }
      for (size_t k = 1; k < roots.size(); ++k) CHECK(roots[k] > roots[k - 1]);
    }
  }
}
