#pragma once

#include <functional>
#include <random>
#include <vector>

#include "bma/jet.hpp"

namespace testutil {

using bma::Jet3;
using bma::complex;

// Fourth-order central differences of an analytic f along the direction d.
// Independent oracle for jet arithmetic; never used by the library itself.
template <class F>
Jet3 fd_jet(const F& f, complex zeta, complex d = complex(1.0, 0.0),
            double h = 3e-3) {
  auto g = [&](double s) { return f(zeta + s * d); };
  complex g0 = g(0.0);
  complex g1 = (-g(2 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2 * h)) / (12.0 * h);
  complex g2 = (-g(2 * h) + 16.0 * g(h) - 30.0 * g0 + 16.0 * g(-h) - g(-2 * h)) /
               (12.0 * h * h);
  complex g3 = (-g(3 * h) + 8.0 * g(2 * h) - 13.0 * g(h) + 13.0 * g(-h) -
                8.0 * g(-2 * h) + g(-3 * h)) /
               (8.0 * h * h * h);
  return {g0, g1 / d, g2 / (d * d), g3 / (d * d * d)};
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240613u);
  return gen;
}

inline double rand_uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

inline complex rand_in_disk(double r_max = 0.8) {
  while (true) {
    double x = rand_uniform(-r_max, r_max), y = rand_uniform(-r_max, r_max);
    if (x * x + y * y < r_max * r_max) return {x, y};
  }
}

inline complex rand_unimodular() {
  return std::polar(1.0, rand_uniform(0.0, 2.0 * M_PI));
}

inline double jet_distance(const Jet3& a, const Jet3& b) {
  return std::max(std::max(std::abs(a.f0 - b.f0), std::abs(a.f1 - b.f1)),
                  std::max(std::abs(a.f2 - b.f2), std::abs(a.f3 - b.f3)));
}

// All roots of a polynomial sum_i c[i] z^i by Durand-Kerner (degrees here
// are tiny; 200 sweeps is far more than enough).
inline std::vector<complex> poly_roots(std::vector<complex> c) {
  while (!c.empty() && std::abs(c.back()) < 1e-14) c.pop_back();
  int n = int(c.size()) - 1;
  std::vector<complex> r(n);
  for (int i = 0; i < n; ++i) r[i] = std::polar(0.7, 0.9 + 2.0 * M_PI * i / n);
  auto eval = [&](complex z) {
    complex v = 0.0;
    for (int i = n; i >= 0; --i) v = v * z + c[i];
    return v;
  };
  for (int sweep = 0; sweep < 200; ++sweep) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      complex den = c[n];
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (r[i] - r[j]);
      complex delta = eval(r[i]) / den;
      r[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14) break;
  }
  return r;
}

}  // namespace testutil
