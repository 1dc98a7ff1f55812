#include "bma/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "bma/blaschke.hpp"
#include "bma/convexity.hpp"
#include "bma/error.hpp"
#include "bma/quadrature.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bma;

namespace {

MapPtr square_map() {
  return interior_from_data(
      PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
}

PolygonData pentagon_data() {
  return PolygonData({0.0, 1.1, 2.4, 3.9, 5.3}, {0.45, 0.35, 0.4, 0.42, 0.38});
}

constexpr double kSquareSide = 1.8540746773013719184;  // sqrt(2) * lemniscatic
constexpr double kSquareInv = 1.6944261695879581732;   // int_0^{pi/2} sqrt(2 sin 2t) dt

}  // namespace

TEST_CASE("boundary speed closed forms") {
  MapPtr sq = square_map();
  // square at t = pi/4: (2 sin(pi/2))^{-1/2} = 2^{-1/2}
  CHECK(boundary_speed(*sq, M_PI / 4) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-13));
  // strip at t = pi/2: 1/(2 sin t) = 1/2
  CHECK(boundary_speed(*make_strip(), M_PI / 2) == doctest::Approx(0.5).epsilon(1e-13));
  // closed form agrees with the boundary jet
  MapPtr pent = interior_from_data(pentagon_data());
  for (double t : {0.3, 0.9, 2.0, 3.1, 4.5, 6.0}) {
    complex z = std::polar(1.0, t);
    CHECK(boundary_speed(*pent, t) ==
          doctest::Approx(std::abs(pent->derivative_jet(z).f1)).epsilon(1e-11));
  }
  // divergence exponent toward a prevertex: speed ~ |t - t_k|^{-alpha_k}
  double a1 = 0.45;
  double s1 = boundary_speed(*pent, 1e-3), s2 = boundary_speed(*pent, 1e-4);
  CHECK(std::log10(s2 / s1) == doctest::Approx(a1).epsilon(1e-2));
  CHECK_THROWS_AS((void)boundary_speed(*pent, 1.1), Error);  // prevertex
}

TEST_CASE("interior pole locus of the square: p(t) = e^{-3it}") {
  MapPtr sq = square_map();
  PoleLocus locus = pole_locus(*sq, CircleArc{0.0, M_PI / 2}, 200);
  CHECK(locus.arc_index == 0);
  for (const PoleLocusSample& s : locus.samples)
    CHECK(std::abs(s.p - std::polar(1.0, -3.0 * s.t)) < 1e-12);
  CHECK(locus.monotone);
  CHECK(!locus.increasing);
  CHECK(std::abs(locus.total_variation - 3.0 * M_PI / 2) < 1e-8);
  CHECK(locus.min_dist_to_closed_arc > 0.0);
  CHECK(std::abs(locus.limit_start - 1.0) < 1e-8);
  CHECK(std::abs(locus.limit_end - complex(0.0, 1.0)) < 1e-8);
}

TEST_CASE("interior pole locus of a generic pentagon arc") {
  MapPtr pent = interior_from_data(pentagon_data());
  const PolygonData& pd = *pent->polygon();
  for (size_t k : {size_t(0), size_t(2), size_t(4)}) {
    CircleArc arc{pd.arc_start(k), pd.arc_end(k)};
    PoleLocus locus = pole_locus(*pent, arc, 400);
    CHECK(locus.monotone);
    CHECK(!locus.increasing);
    double dt = arc.t_end - arc.t_start;
    CHECK(std::abs(locus.total_variation - (2.0 * M_PI - dt)) < 1e-8);
    CHECK(locus.min_dist_to_closed_arc > 0.0);
    CHECK(std::abs(locus.limit_start - pd.prevertex(k)) < 1e-8);
    CHECK(std::abs(locus.limit_end - pd.prevertex((k + 1) % pd.size())) < 1e-8);
  }
}

TEST_CASE("exterior pole locus: square B = z^3 gives p(t) = e^{5it}") {
  MapPtr g = exterior_from_blaschke(BlaschkeProduct({0.0, 0.0, 0.0}));
  PoleLocus locus = pole_locus(*g, CircleArc{0.0, M_PI / 2}, 300);
  for (const PoleLocusSample& s : locus.samples)
    CHECK(std::abs(s.p - std::polar(1.0, 5.0 * s.t)) < 1e-12);
  CHECK(locus.monotone);
  CHECK(locus.increasing);
  CHECK(std::abs(locus.total_variation - 5.0 * M_PI / 2) < 1e-8);
}

TEST_CASE("exterior pole locus of a generic degree-3 product") {
  BlaschkeProduct b({0.0, complex(0.35, 0.1), complex(-0.2, 0.25)});
  MapPtr g = exterior_from_blaschke(b);
  REQUIRE(g->polygon() != nullptr);
  const PolygonData& pd = *g->polygon();
  for (size_t k = 0; k < pd.size(); ++k) {
    CircleArc arc{pd.arc_start(k), pd.arc_end(k)};
    PoleLocus locus = pole_locus(*g, arc, 500);
    CHECK(locus.monotone);
    CHECK(locus.increasing);
    double dt = arc.t_end - arc.t_start;
    CHECK(std::abs(locus.total_variation - (2.0 * M_PI + dt)) < 1e-8);
    CHECK(std::abs(locus.limit_start - pd.prevertex(k)) < 1e-8);
    CHECK(std::abs(locus.limit_end - pd.prevertex((k + 1) % pd.size())) < 1e-8);
    // p = zeta^2 B on the arc
    for (size_t i = 0; i < locus.samples.size(); i += 37) {
      const PoleLocusSample& s = locus.samples[i];
      complex z = std::polar(1.0, s.t);
      CHECK(std::abs(s.p - z * z * b.eval(z)) < 1e-10);
    }
  }
}

TEST_CASE("locus derivative identities against the boundary log-derivative") {
  BlaschkeProduct b({0.0, 0.0, 0.0});
  MapPtr sq = interior_from_blaschke(b);
  MapPtr g = exterior_from_blaschke(b);
  const PolygonData& pd = *sq->polygon();
  double t0 = 0.5 * (pd.arc_start(0) + pd.arc_end(0));
  double h = 1e-5;
  auto arg_p = [&](const AnalyticMap& m, double t) {
    Jet3 j = m.derivative_jet(std::polar(1.0, t));
    return std::arg(std::polar(1.0, t) + 2.0 * j.f1 / j.f2);
  };
  double d_int = (arg_p(*sq, t0 + h) - arg_p(*sq, t0 - h)) / (2.0 * h);
  CHECK(d_int == doctest::Approx(-boundary_log_derivative(b, t0)).epsilon(1e-6));
  double d_ext = (arg_p(*g, t0 + h) - arg_p(*g, t0 - h)) / (2.0 * h);
  CHECK(d_ext == doctest::Approx(2.0 + boundary_log_derivative(b, t0)).epsilon(1e-6));
  CHECK(d_ext > 2.0);
}

TEST_CASE("arc crossing a prevertex is rejected") {
  MapPtr sq = square_map();
  CHECK_THROWS_AS((void)pole_locus(*sq, CircleArc{0.4, 2.0}, 64), Error);
}

TEST_CASE("profile concavity/convexity on arcs") {
  MapPtr sq = square_map();
  ProfileReport r = profile_shape_check(*sq, CircleArc{0.0, M_PI / 2}, 2000);
  CHECK(r.profile_ok);
  CHECK(r.max_second_diff <= 1e-8 * r.scale);
  CHECK(r.speed_min_second_diff >= -1e-8);  // |f'| convex on the arc

  MapPtr strip = make_strip();
  ProfileReport rs = profile_shape_check(*strip, CircleArc{0.0, M_PI}, 2000);
  CHECK(rs.profile_ok);

  MapPtr pent = interior_from_data(pentagon_data());
  const PolygonData& pd = *pent->polygon();
  for (size_t k = 0; k < pd.size(); ++k) {
    ProfileReport rp = profile_shape_check(
        *pent, CircleArc{pd.arc_start(k), pd.arc_end(k)}, 1000);
    CHECK(rp.profile_ok);
  }

  MapPtr ext = exterior_from_blaschke(BlaschkeProduct({0.0, 0.0, 0.0}));
  ProfileReport re = profile_shape_check(*ext, CircleArc{0.0, M_PI / 2}, 2000);
  CHECK(re.profile_ok);
  CHECK(re.min_second_diff >= -1e-8 * re.scale);
}

TEST_CASE("square profile closed form u = (2 sin 2t)^{1/4}") {
  MapPtr sq = square_map();
  ProfileReport r = profile_shape_check(*sq, CircleArc{0.0, M_PI / 2}, 101);
  for (size_t i = 0; i < r.t.size(); ++i)
    CHECK(r.u[i] == doctest::Approx(std::pow(2.0 * std::sin(2.0 * r.t[i]), 0.25)).epsilon(1e-12));
}

TEST_CASE("Sturm equation residual on interior arcs") {
  MapPtr sq = square_map();
  CHECK(sturm_residual(*sq, CircleArc{0.0, M_PI / 2}) < 1e-4);
  MapPtr strip = make_strip();
  CHECK(sturm_residual(*strip, CircleArc{0.0, M_PI}) < 1e-4);
}

TEST_CASE("sign facts: Re{z^2 Sf} < 0 and Re{S_psi} < 0 on arcs") {
  MapPtr sq = square_map();
  CHECK(boundary_schwarzian_sign_max(*sq, CircleArc{0.0, M_PI / 2}, 500) < 0.0);
  MapPtr ext = exterior_from_blaschke(BlaschkeProduct({0.0, 0.0, 0.0}));
  CHECK(boundary_schwarzian_sign_max(*ext, CircleArc{0.0, M_PI / 2}, 500) < 0.0);
}

TEST_CASE("extremal points: square and equilateral closed forms") {
  MapPtr sq = square_map();
  std::vector<ExtremalPoint> ext = extremal_points(*sq);
  REQUIRE(ext.size() == 4);
  for (size_t k = 0; k < 4; ++k) {
    CHECK(ext[k].t == doctest::Approx(M_PI / 4 + k * M_PI / 2).epsilon(1e-12));
    CHECK(std::abs(ext[k].t - ext[k].stationary_t) < 1e-6);
    CHECK(ext[k].contact_residual < 1e-9);
  }
  MapPtr tri = interior_from_blaschke(BlaschkeProduct({0.0, 0.0}));
  std::vector<ExtremalPoint> et = extremal_points(*tri);
  REQUIRE(et.size() == 3);
  CHECK(et[0].t == doctest::Approx(M_PI / 3).epsilon(1e-12));
  CHECK(et[1].t == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(et[2].t == doctest::Approx(5 * M_PI / 3).epsilon(1e-12));
}

TEST_CASE("extremal points on a generic pentagon") {
  MapPtr pent = interior_from_data(pentagon_data());
  std::vector<ExtremalPoint> ext = extremal_points(*pent);
  REQUIRE(ext.size() == 5);
  for (const ExtremalPoint& e : ext) {
    CHECK(std::abs(e.t - e.stationary_t) < 1e-6);
    CHECK(e.contact_residual < 1e-9);
  }
}

TEST_CASE("arc integrals of the square") {
  MapPtr sq = square_map();
  for (size_t k = 0; k < 4; ++k) {
    ArcIntegrals ai = arc_integrals(*sq, k);
    CHECK(ai.speed == doctest::Approx(kSquareSide).epsilon(1e-8));
    CHECK(ai.inverse_speed == doctest::Approx(kSquareInv).epsilon(1e-8));
  }
  // independent oracle for int 1/|f'|: adaptive quadrature of the closed form
  double oracle = adaptive_simpson(
      [](double t) { return std::sqrt(2.0 * std::sin(2.0 * t)); }, 0.0,
      M_PI / 2, 1e-7, 46);
  CHECK(arc_integrals(*sq, 0).inverse_speed == doctest::Approx(oracle).epsilon(1e-6));
  // side length cross-check against the vertices
  std::vector<complex> v = vertices_of(*sq);
  CHECK(arc_integrals(*sq, 1).speed ==
        doctest::Approx(std::abs(v[2] - v[1])).epsilon(1e-8));
}

TEST_CASE("equilateral arcs give equal pairs") {
  MapPtr tri = interior_from_blaschke(BlaschkeProduct({0.0, 0.0}));
  ArcIntegrals a0 = arc_integrals(*tri, 0);
  for (size_t k = 1; k < 3; ++k) {
    ArcIntegrals ak = arc_integrals(*tri, k);
    CHECK(ak.speed == doctest::Approx(a0.speed).epsilon(1e-8));
    CHECK(ak.inverse_speed == doctest::Approx(a0.inverse_speed).epsilon(1e-8));
  }
}

TEST_CASE("triangle balance of the normalized scalene map") {
  PolygonData sc = triangle_prevertices_normalized(0.5, 0.7, 0.8);
  MapPtr f = interior_from_data(sc);
  TriangleBalance tb = triangle_balance(*f);
  CHECK(tb.balanced);
  CHECK(tb.spread < 1e-6);
  CHECK(tb.ratio[0] == doctest::Approx(1.465776993).epsilon(1e-7));
  CHECK_THROWS_AS((void)triangle_balance(*square_map()), Error);
}

TEST_CASE("precomposition destroys balance; closing-observation sandwich") {
  PolygonData sc = triangle_prevertices_normalized(0.5, 0.7, 0.8);
  MapPtr f = interior_from_data(sc);
  MapPtr g = precompose_automorphism(f, complex(0.3, 0.0), 1.0);
  TriangleBalance tb = triangle_balance(*g);
  CHECK(!tb.balanced);
  CHECK(tb.spread > 1e-2);
  REQUIRE(tb.is_precomposed);
  CHECK(tb.b == doctest::Approx(13.0 / 7.0).epsilon(1e-14));
  CHECK(tb.sandwich_holds);
  for (int k = 0; k < 3; ++k) {
    CHECK(tb.lower_link[k].holds);
    CHECK(tb.upper_link[k].holds);
    CHECK(tb.ratio_bounds[k].holds);
  }
  // change of variables: int_J |g'| ds = int_I |f'| dt arc-wise (as multisets)
  std::array<double, 3> gints = tb.speed_int;
  std::array<double, 3> fints{};
  for (size_t k = 0; k < 3; ++k) fints[k] = arc_integrals(*f, k).speed;
  std::sort(gints.begin(), gints.end());
  std::sort(fints.begin(), fints.end());
  for (size_t k = 0; k < 3; ++k)
    CHECK(gints[k] == doctest::Approx(fints[k]).epsilon(1e-7));
}

TEST_CASE("constant C links the scalene triangle to its dual") {
  PolygonData sc = triangle_prevertices_normalized(0.5, 0.7, 0.8);
  MapPtr f = interior_from_data(sc);
  MapPtr g = dual_map(f);
  TriangleBalance tb = triangle_balance(*f);
  double C = (tb.ratio[0] + tb.ratio[1] + tb.ratio[2]) / 3.0;
  for (size_t k = 0; k < 3; ++k) {
    ArcIntegrals af = arc_integrals(*f, k);
    ArcIntegrals ag = arc_integrals(*g, k);
    // int |f'| = C int |g'| = C int 1/|f'| with one constant C
    CHECK(af.speed == doctest::Approx(C * ag.speed).epsilon(1e-6));
    CHECK(af.speed == doctest::Approx(C * af.inverse_speed).epsilon(1e-6));
    // the dual shares |g'| = 1/|f'| on the boundary
    CHECK(ag.speed == doctest::Approx(af.inverse_speed).epsilon(1e-8));
  }
}

TEST_CASE("dual exterior triangle is similar to the interior one") {
  PolygonData sc = triangle_prevertices_normalized(0.5, 0.7, 0.8);
  MapPtr f = interior_from_data(sc);
  MapPtr g = dual_map(f);
  std::vector<complex> vf = vertices_of(*f);
  std::vector<complex> vg = vertices_of(*g);
  REQUIRE(vf.size() == 3);
  REQUIRE(vg.size() == 3);
  double r0 = std::abs(vg[1] - vg[0]) / std::abs(vf[1] - vf[0]);
  double r1 = std::abs(vg[2] - vg[1]) / std::abs(vf[2] - vf[1]);
  double r2 = std::abs(vg[0] - vg[2]) / std::abs(vf[0] - vf[2]);
  CHECK(std::abs(r1 / r0 - 1.0) < 1e-6);
  CHECK(std::abs(r2 / r0 - 1.0) < 1e-6);
}
