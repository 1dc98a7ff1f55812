#include "bma/moebius.hpp"

#include <cmath>

#include "bma/bma.hpp"
#include "bma/error.hpp"
#include "bma/polygon.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bma;
using testutil::rand_in_disk;
using testutil::rand_uniform;

namespace {

complex xform(const Moebius& t, complex z) {
  ExtendedComplex r = moebius_apply(t, z);
  REQUIRE(!r.infinite);
  return r.value;
}

// ML(z, zeta) = (1/2) log((1+zeta)/(1-zeta)) + (zeta - z)/(z zeta - 1)
complex ml_closed_form(complex z, complex zeta) {
  return 0.5 * std::log((1.0 + zeta) / (1.0 - zeta)) + (zeta - z) / (z * zeta - 1.0);
}

// MA(z, zeta) = (1/2a) ( ((1+zeta)/(1-zeta))^a (1 - z zeta + a(z - zeta))
//                        / (1 - z zeta - a(z - zeta)) - 1 )
complex ma_closed_form(complex z, complex zeta, double a) {
  complex w = std::pow((1.0 + zeta) / (1.0 - zeta), a);
  complex num = 1.0 - z * zeta + a * (z - zeta);
  complex den = 1.0 - z * zeta - a * (z - zeta);
  return (w * num / den - 1.0) / (2.0 * a);
}

}  // namespace

TEST_CASE("Moebius group operations") {
  Moebius id = Moebius::identity();
  for (int i = 0; i < 10; ++i) {
    complex z = rand_in_disk(2.0);
    CHECK(std::abs(xform(id, z) - z) == 0.0);
  }
  // pole of z/(z-2)
  Moebius t{1.0, 0.0, 1.0, complex(-2.0, 0.0)};
  ExtendedComplex p = moebius_pole(t);
  CHECK(!p.infinite);
  CHECK(std::abs(p.value - 2.0) < 1e-15);

  Moebius s{complex(1.0, 0.3), complex(0.2, -0.5), complex(0.1, 0.0), 1.0};
  Moebius si = moebius_invert(s);
  Moebius comp = moebius_compose(s, si);
  for (complex z : {complex(0.1, 0.2), complex(-0.4, 0.3), complex(0.0, -0.6)}) {
    CHECK(std::abs(xform(comp, z) - z) < 1e-14);
  }
  CHECK_THROWS_AS((void)moebius_checked(1.0, 2.0, 2.0, 4.0), Error);
}

TEST_CASE("BMA of the strip matches the ML closed form") {
  MapPtr strip = make_strip();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    complex zeta = rand_in_disk(0.7);
    complex z = rand_in_disk(0.8);
    Moebius t = best_moebius(*strip, zeta);
    worst = std::max(worst, std::abs(xform(t, z) - ml_closed_form(z, zeta)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("BMA of the sector matches the MA closed form") {
  for (double a : {0.35, 0.6, 1.0}) {
    MapPtr sector = make_sector(a);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      complex zeta = rand_in_disk(0.7);
      complex z = rand_in_disk(0.8);
      Moebius t = best_moebius(*sector, zeta);
      worst = std::max(worst, std::abs(xform(t, z) - ma_closed_form(z, zeta, a)));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("BMA of a Moebius map is the map itself") {
  Moebius m{complex(1.0, 0.1), complex(0.2, 0.0), complex(-0.08, 0.03), 1.0};
  MapPtr f = make_moebius_map(m);
  for (int i = 0; i < 30; ++i) {
    complex zeta = rand_in_disk(0.8);
    Moebius t = best_moebius(*f, zeta);
    for (int j = 0; j < 3; ++j) {
      complex z = rand_in_disk(0.9);
      CHECK(std::abs(xform(t, z) - xform(m, z)) < 1e-12);
    }
  }
}

TEST_CASE("determinant normalization ad - bc = f'(zeta)") {
  std::vector<MapPtr> maps = {make_strip(), make_sector(0.5), make_lens(0.5),
                              make_koebe()};
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 50; ++i) {
      complex zeta = rand_in_disk(0.75);
      Moebius t = best_moebius(*f, zeta);
      complex fp = f->jet(zeta).f1;
      CHECK(std::abs(t.det() - fp) < 1e-12 * (1.0 + std::abs(fp)));
      ExtendedComplex tp = moebius_pole(t);
      ExtendedComplex dp = bma_pole(*f, zeta);
      if (!dp.infinite) {
        REQUIRE(!tp.infinite);
        CHECK(std::abs(tp.value - dp.value) < 1e-9 * (1.0 + std::abs(dp.value)));
      }
    }
  }
}

TEST_CASE("second-order contact of the BMA jets") {
  std::vector<MapPtr> maps = {make_strip(), make_sector(0.45), make_lens(0.7),
                              make_koebe()};
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 25; ++i) {
      complex zeta = rand_in_disk(0.7);
      Jet3 jf = f->jet(zeta);
      Jet3 jt = moebius_jet(best_moebius(jf, zeta), zeta);
      CHECK(std::abs(jf.f0 - jt.f0) < 1e-11 * (1.0 + std::abs(jf.f0)));
      CHECK(std::abs(jf.f1 - jt.f1) < 1e-11 * (1.0 + std::abs(jf.f1)));
      CHECK(std::abs(jf.f2 - jt.f2) < 1e-11 * (1.0 + std::abs(jf.f2)));
    }
  }
}

TEST_CASE("pole formulas: strip 1/zeta, Koebe (1+2z)/(2+z), infinite at f''=0") {
  MapPtr strip = make_strip();
  for (int i = 0; i < 30; ++i) {
    complex zeta = rand_in_disk(0.8);
    if (std::abs(zeta) < 0.05) continue;
    ExtendedComplex p = bma_pole(*strip, zeta);
    REQUIRE(!p.infinite);
    CHECK(std::abs(p.value - 1.0 / zeta) < 1e-11 * std::abs(1.0 / zeta));
  }
  MapPtr koebe = make_koebe();
  for (int i = 0; i < 30; ++i) {
    complex z = rand_in_disk(0.9);
    ExtendedComplex p = bma_pole(*koebe, z);
    REQUIRE(!p.infinite);
    CHECK(std::abs(p.value - (1.0 + 2.0 * z) / (2.0 + z)) < 1e-12);
  }
  ExtendedComplex pk = bma_pole(*koebe, complex(-0.9, 0.0));
  CHECK(pk.value.real() == doctest::Approx(-0.72727272727272729).epsilon(1e-12));
  CHECK(std::abs(pk.value) < 0.9);  // strictly inside
  // strip at 0: f'' = 0 exactly
  CHECK(bma_pole(*strip, complex(0.0, 0.0)).infinite);
}

TEST_CASE("pole classification: trichotomy witnesses") {
  MapPtr strip = make_strip();
  PoleClassification c = classify_pole(*strip, complex(0.5, 0.0));
  CHECK(c.h == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(c.k) < 1e-14);
  CHECK(c.cls == PoleClass::Outside);
  CHECK(c.collinear);
  CHECK(!c.antipodal);

  PoleClassification ck = classify_pole(*make_koebe(), complex(-0.9, 0.0));
  CHECK(ck.h == doctest::Approx(-9.4210526315789469).epsilon(1e-12));
  CHECK(ck.cls == PoleClass::Inside);

  // square boundary point with z^4 = -1: h = k = 0 and p = -zeta
  MapPtr square = interior_from_data(
      PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
  complex zeta = std::polar(1.0, M_PI / 4.0);
  PoleClassification cs = classify_pole(*square, zeta);
  CHECK(cs.antipodal);
  CHECK(cs.collinear);
  ExtendedComplex p = bma_pole(*square, zeta);
  REQUIRE(!p.infinite);
  CHECK(std::abs(p.value + zeta) < 1e-13);
}

// (2.2) gives |p|^2 - |zeta|^2 = 4h |zeta|^2 / ((1-h)^2 + k^2); the printed
// display drops the |zeta|^2 factor
TEST_CASE("identity |p|^2 - |zeta|^2 = 4h|zeta|^2/((1-h)^2 + k^2)") {
  std::vector<MapPtr> maps = {make_strip(), make_sector(0.5), make_koebe(),
                              make_lens(0.4)};
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 100; ++i) {
      complex zeta = rand_in_disk(0.85);
      PoleClassification c = classify_pole(*f, zeta);
      ExtendedComplex p = bma_pole(*f, zeta);
      if (p.infinite) continue;
      double lhs = std::norm(p.value) - std::norm(zeta);
      double rhs = 4.0 * c.h * std::norm(zeta) /
                   ((1.0 - c.h) * (1.0 - c.h) + c.k * c.k);
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("collinear and antipodal flags describe the geometry") {
  std::vector<MapPtr> maps = {make_strip(), make_koebe(), make_sector(0.8)};
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 200; ++i) {
      complex zeta = rand_in_disk(0.8);
      if (std::abs(zeta) < 1e-3) continue;
      PoleClassification c = classify_pole(*f, zeta);
      ExtendedComplex p = bma_pole(*f, zeta);
      if (p.infinite) continue;
      if (c.collinear) {
        complex ratio = p.value / zeta;
        CHECK(std::abs(ratio.imag()) < 1e-8 * (1.0 + std::abs(ratio)));
      }
      if (c.antipodal) CHECK(std::abs(p.value + zeta) < 1e-8);
    }
  }
}

TEST_CASE("Moebius equivariance of the BMA") {
  std::vector<MapPtr> maps = {make_strip(), make_koebe(), make_sector(0.5)};
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 30; ++i) {
      // transform with pole far from the image region
      Moebius t{complex(1.0, rand_uniform(-0.2, 0.2)),
                complex(rand_uniform(-0.5, 0.5), rand_uniform(-0.5, 0.5)),
                complex(rand_uniform(-0.03, 0.03), rand_uniform(-0.03, 0.03)),
                1.0};
      MapPtr tf = postcompose_moebius(t, f);
      complex zeta = rand_in_disk(0.6);
      Moebius lhs = best_moebius(*tf, zeta);
      Moebius rhs = moebius_compose(t, best_moebius(*f, zeta));
      for (int j = 0; j < 3; ++j) {
        complex z = rand_in_disk(0.9);
        ExtendedComplex a = moebius_apply(lhs, z), b = moebius_apply(rhs, z);
        REQUIRE(!a.infinite);
        REQUIRE(!b.infinite);
        CHECK(std::abs(a.value - b.value) < 1e-10 * (1.0 + std::abs(b.value)));
      }
    }
  }
}

TEST_CASE("trichotomy: sign(|p| - |zeta|) = sign(h) over random samples") {
  std::vector<MapPtr> maps = {
      make_strip(), make_sector(0.5), make_lens(0.5), make_koebe(),
      make_polynomial({complex(0.0, 0.0), complex(1.0, 0.0), complex(0.1, 0.05),
                       complex(-0.04, 0.06)}),
      interior_from_data(PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2},
                                     {0.5, 0.5, 0.5, 0.5}))};
  int checked = 0;
  for (const MapPtr& f : maps) {
    for (int i = 0; i < 400; ++i) {
      complex zeta = rand_in_disk(0.85);
      PoleClassification c = classify_pole(*f, zeta);
      if (std::abs(c.h) < 1e-9) continue;  // below the class tolerance
      ExtendedComplex p = bma_pole(*f, zeta);
      double diff = p.infinite ? 1.0 : std::abs(p.value) - std::abs(zeta);
      CHECK((diff > 0) == (c.h > 0));
      ++checked;
    }
  }
  CHECK(checked > 1500);
}

TEST_CASE("boundary pole limit at a prevertex: p(zeta_n) -> zeta_0") {
  MapPtr square = interior_from_data(
      PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
  complex zeta0(1.0, 0.0);  // prevertex, where f''/f' blows up
  double prev_dist = 10.0;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    complex zeta = std::polar(1.0 - 1e-9, eps);  // boundary approach near t=0
    ExtendedComplex p = bma_pole(*square, zeta);
    REQUIRE(!p.infinite);
    double dist = std::abs(p.value - zeta0);
    CHECK(dist < prev_dist + 1e-12);
    prev_dist = dist;
  }
  CHECK(prev_dist < 1e-6);
}

TEST_CASE("region sampling landmarks") {
  complex z(1.0, 0.0);
  CHECK(std::abs(normalized_pole_from_hk(-1.0, 0.0, z)) < 1e-15);       // p = 0
  CHECK(std::abs(normalized_pole_from_hk(0.0, 0.0, z) + z) < 1e-15);    // p = -z
  // h^2 + k^2 = 1: pole perpendicular to z
  for (double t : {0.3, 1.2, 2.0}) {
    complex p = normalized_pole_from_hk(std::cos(t), std::sin(t), z);
    CHECK(std::abs((p * std::conj(z)).real()) < 1e-13 * std::abs(p));
  }
  RegionRaster r = region_sample(RegionWindow{}, 24, 24);
  CHECK(r.cells.size() == 24 * 24);
  REQUIRE(r.landmarks.size() == 2);
  CHECK(std::abs(r.landmarks[0].pole) == 0.0);
  CHECK(std::abs(r.landmarks[1].pole + complex(1.0, 0.0)) == 0.0);
  CHECK_THROWS_AS((void)region_sample(RegionWindow{}, 0, 8), Error);
  for (const RegionCell& cell : r.cells) {
    PoleClass expect = cell.h > 1e-9 * (1.0 + std::abs(cell.h))
                           ? PoleClass::Outside
                           : (cell.h < -1e-9 * (1.0 + std::abs(cell.h))
                                  ? PoleClass::Inside
                                  : PoleClass::OnModulusCircle);
    CHECK(cell.cls == expect);
  }
}

TEST_CASE("supporting halfplane of the square at t = pi/4") {
  MapPtr square = interior_from_data(
      PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
  SupportingHalfplane hp = supporting_halfplane(*square, M_PI / 4.0);
  CHECK(std::abs(std::abs(hp.pole) - 1.0) < 1e-12);
  std::vector<complex> verts = vertices_of(*square);
  REQUIRE(verts.size() == 4);
  complex tangent = complex(0.0, -1.0) * hp.inward_normal;
  // adjacent vertices f(1), f(i) lie on the halfplane boundary line
  double d0 = std::abs(((verts[0] - hp.boundary_point) * std::conj(tangent)).imag());
  double d1 = std::abs(((verts[1] - hp.boundary_point) * std::conj(tangent)).imag());
  CHECK(d0 < 1e-8);
  CHECK(d1 < 1e-8);
  // all vertices inside the closed halfplane
  for (const complex& v : verts)
    CHECK(((v - hp.boundary_point) * std::conj(hp.inward_normal)).real() > -1e-10);
  // curved boundary point rejected
  CHECK_THROWS_AS((void)supporting_halfplane(*make_lens(0.5), M_PI / 2), Error);
}

TEST_CASE("supporting halfplane contains sampled interior image points") {
  MapPtr square = interior_from_data(
      PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
  SupportingHalfplane hp = supporting_halfplane(*square, M_PI / 4.0);
  for (int i = 0; i < 60; ++i) {
    complex z = rand_in_disk(0.95);
    complex w = square->jet(z).f0;
    CHECK(((w - hp.boundary_point) * std::conj(hp.inward_normal)).real() >
          -1e-9);
  }
}
