#include "bma/bma.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bma/error.hpp"

namespace bma {

namespace {

constexpr double kFlagTol = 1e-9;

void require_locally_injective(const Jet3& j) {
  if (j.f1 == complex(0.0, 0.0))
    fail(ErrorCode::CriticalPoint, "BMA undefined where f' = 0");
}

}  // namespace

Moebius best_moebius(const Jet3& j, complex zeta) {
  require_locally_injective(j);
  complex a = (2.0 * j.f1 * j.f1 - j.f0 * j.f2) / (2.0 * j.f1);
  complex c = -j.f2 / (2.0 * j.f1);
  complex b = j.f0 - zeta * a;
  complex d = 1.0 - zeta * c;
  return Moebius{a, b, c, d};
}

Moebius best_moebius(const AnalyticMap& f, complex zeta) {
  return best_moebius(f.jet(zeta), zeta);
}

ExtendedComplex bma_pole(const Jet3& j, complex zeta) {
  require_locally_injective(j);
  if (j.f2 == complex(0.0, 0.0)) return ExtendedComplex::inf();
  return ExtendedComplex::of(zeta + 2.0 * j.f1 / j.f2);
}

ExtendedComplex bma_pole(const AnalyticMap& f, complex zeta) {
  return bma_pole(f.derivative_jet(zeta), zeta);
}

PoleClassification classify_from_hk(double h, double k) {
  PoleClassification r;
  r.h = h;
  r.k = k;
  double scale = 1.0 + std::abs(h);
  if (h > kFlagTol * scale)
    r.cls = PoleClass::Outside;
  else if (h < -kFlagTol * scale)
    r.cls = PoleClass::Inside;
  else
    r.cls = PoleClass::OnModulusCircle;
  r.collinear = std::abs(k) < kFlagTol * scale;
  r.antipodal = std::abs(h) < kFlagTol && std::abs(k) < kFlagTol;
  return r;
}

PoleClassification classify_pole(const AnalyticMap& f, complex zeta) {
  Jet3 j = f.derivative_jet(zeta);
  require_locally_injective(j);
  complex hk = 1.0 + zeta * j.f2 / j.f1;
  return classify_from_hk(hk.real(), hk.imag());
}

const char* pole_class_name(PoleClass c) {
  switch (c) {
    case PoleClass::Outside: return "outside";
    case PoleClass::OnModulusCircle: return "on-modulus-circle";
    case PoleClass::Inside: return "inside";
  }
  return "?";
}

complex normalized_pole_from_hk(double h, double k, complex z) {
  complex w(1.0 + h, k);
  complex d(1.0 - h, -k);
  return -z * w / d / std::abs(z);
}

namespace {

RegionCell region_cell(const RegionWindow& w, int nx, int ny, int ix, int iy,
                       complex z) {
  double h = w.h_min + (w.h_max - w.h_min) * (ix + 0.5) / nx;
  double k = w.k_min + (w.k_max - w.k_min) * (iy + 0.5) / ny;
  RegionCell cell;
  cell.h = h;
  cell.k = k;
  cell.cls = classify_from_hk(h, k).cls;
  complex d(1.0 - h, -k);
  cell.pole_finite = std::abs(d) > 1e-14;
  cell.pole = cell.pole_finite ? normalized_pole_from_hk(h, k, z)
                               : complex(1.0, 0.0);
  return cell;
}

}  // namespace

RegionRaster region_sample(const RegionWindow& window, int nx, int ny,
                           complex z, bool parallel) {
  if (nx <= 0 || ny <= 0)
    fail(ErrorCode::BadParameter, "raster resolution must be positive");
  if (std::abs(z) == 0.0)
    fail(ErrorCode::BadParameter, "reference point must be nonzero");
  RegionRaster r;
  r.window = window;
  r.nx = nx;
  r.ny = ny;
  r.landmarks = {
      {"p = 0", -1.0, 0.0, normalized_pole_from_hk(-1.0, 0.0, z)},
      {"p = -z", 0.0, 0.0, normalized_pole_from_hk(0.0, 0.0, z)},
  };
  r.cells.resize(size_t(nx) * ny);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        r.cells[size_t(iy) * nx + ix] = region_cell(window, nx, ny, ix, iy, z);
  } else {
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        r.cells[size_t(iy) * nx + ix] = region_cell(window, nx, ny, ix, iy, z);
  }
  return r;
}

SupportingHalfplane supporting_halfplane(const AnalyticMap& f, double t) {
  complex zeta = std::polar(1.0, t);
  Jet3 j = f.jet(zeta);
  require_locally_injective(j);
  complex hk = 1.0 + zeta * j.f2 / j.f1;
  // zero boundary curvature <=> Re{1 + zeta f''/f'} = 0 on |zeta| = 1
  if (std::abs(hk.real()) > 1e-8 * (1.0 + std::abs(hk)))
    fail(ErrorCode::NotOnStraightEdge,
         "boundary curvature does not vanish at e^{it}");
  SupportingHalfplane hp;
  hp.transform = best_moebius(j, zeta);
  ExtendedComplex p = moebius_pole(hp.transform);
  if (p.infinite)
    fail(ErrorCode::NotOnStraightEdge, "BMA pole escaped to infinity");
  hp.pole = p.value;
  hp.boundary_point = j.f0;
  complex tangent = complex(0.0, 1.0) * zeta * j.f1;
  hp.inward_normal = complex(0.0, 1.0) * tangent / std::abs(tangent);
  return hp;
}

}  // namespace bma
