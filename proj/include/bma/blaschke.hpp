#pragma once

#include <functional>
#include <vector>

#include "bma/jet.hpp"

namespace bma {

// Finite Blaschke product  c * prod_j (z - a_j)/(1 - conj(a_j) z),
// zeros strictly inside the disk, |c| = 1. Zeros with multiplicity
// appear as repeated entries. Degree 0 (a unimodular constant) is allowed.
class BlaschkeProduct {
public:
  explicit BlaschkeProduct(std::vector<complex> zeros,
                           complex rotation = complex(1.0, 0.0));

  int degree() const { return static_cast<int>(zeros_.size()); }
  const std::vector<complex>& zeros() const { return zeros_; }
  complex rotation() const { return rotation_; }

  complex eval(complex z) const;
  Jet3 jet(complex z) const;

private:
  std::vector<complex> zeros_;
  complex rotation_;
};

// zB'(z)/B(z) at z = e^{it}; real and equal to |B'(e^{it})| for a genuine
// Blaschke product. Throws AssertionFailure if that structure is violated.
double boundary_log_derivative(const BlaschkeProduct& b, double t);

// All deg(B)+1 solutions of e^{it} B(e^{it}) = target (target = +1 or -1),
// strictly increasing in [0, 2pi). Monotone bisection on the unwrapped
// argument of zB, then Newton polish.
std::vector<double> circle_level_roots(const BlaschkeProduct& b, int target);

// Same engine for any function t -> e^{it} phi(e^{it}) with phi inner of
// the given degree (|phi| = 1 on the circle). `darg`, when provided, is
// d/dt arg(e^{it} phi) and is used for the Newton polish.
std::vector<double> circle_level_roots_fn(
    const std::function<complex(double)>& zphi, int degree, int target,
    const std::function<double(double)>& darg = {});

}  // namespace bma
