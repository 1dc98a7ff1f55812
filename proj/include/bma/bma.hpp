#pragma once

#include <vector>

#include "bma/analytic_map.hpp"
#include "bma/moebius.hpp"

namespace bma {

// Best Moebius approximation of the map at zeta: the unique fractional-
// linear transform with second-order contact, normalized ad - bc = f'(zeta).
Moebius best_moebius(const AnalyticMap& f, complex zeta);
Moebius best_moebius(const Jet3& jet_at, complex zeta);

// pole p(zeta) = zeta + 2 f'/f''; infinite when f''(zeta) = 0
ExtendedComplex bma_pole(const AnalyticMap& f, complex zeta);
ExtendedComplex bma_pole(const Jet3& jet_at, complex zeta);

enum class PoleClass { Outside, OnModulusCircle, Inside };

// h + ik = 1 + zeta f''/f'; |p| <=> |zeta| according to sign(h)
struct PoleClassification {
  double h = 0.0;
  double k = 0.0;
  PoleClass cls = PoleClass::Outside;
  bool collinear = false;  // 0, zeta, p on one line  (k = 0)
  bool antipodal = false;  // p = -zeta              (h = k = 0)
};

PoleClassification classify_pole(const AnalyticMap& f, complex zeta);
PoleClassification classify_from_hk(double h, double k);

const char* pole_class_name(PoleClass c);

// Raster of the (h, k)-plane: per-cell class and the normalized pole
// -z(1+h+ik)/(1-h-ik) for a reference unimodular z.
struct RegionCell {
  double h, k;
  PoleClass cls;
  complex pole;  // normalized; (1,0) marks the infinite direction h=1,k=0
  bool pole_finite;
};

struct RegionWindow {
  double h_min = -3.0, h_max = 3.0, k_min = -3.0, k_max = 3.0;
};

struct RegionLandmark {
  const char* label;
  double h, k;
  complex pole;
};

struct RegionRaster {
  RegionWindow window;
  int nx = 0, ny = 0;
  std::vector<RegionCell> cells;  // row-major, k varies along rows
  std::vector<RegionLandmark> landmarks;
};

complex normalized_pole_from_hk(double h, double k, complex z);
RegionRaster region_sample(const RegionWindow& window, int nx, int ny,
                           complex z = complex(1.0, 0.0), bool parallel = true);

// BMA at a boundary point of zero boundary curvature: T(D) is the supporting
// halfplane of f(D) touching at f(e^{it}).
struct SupportingHalfplane {
  complex boundary_point;
  complex inward_normal;  // unit; Re{(w - boundary_point) * conj(n)} >= 0 on f(D)
  Moebius transform;
  complex pole;  // unimodular
};

SupportingHalfplane supporting_halfplane(const AnalyticMap& f, double t);

}  // namespace bma
