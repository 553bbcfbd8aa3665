#pragma once

#include <functional>
#include <vector>

#include "nclp/algebra.hpp"

namespace nclp {

/// Relative tolerance used to merge near-duplicate eigenvalues into a single
/// spectral projection (scaled by the largest eigenvalue modulus).
inline constexpr double kSpectralGroupTol = 1e-9;

/// Spectral decomposition of a Hermitian element: mutually orthogonal
/// projections with distinct real values, Sum value_i * e_i == input.
struct SpectralData {
  std::vector<Element> projections;
  std::vector<double> values;  // decreasing
  double tol;                  // grouping tolerance actually used
};

SpectralData spectral(const Element& x, double rel_tol = kSpectralGroupTol);

/// Functional calculus on a Hermitian element: Sum f(value_i) * e_i.
Element func_calc(const Element& x, const std::function<cplx(double)>& f);

struct PolarDecomposition {
  Element phase;    // partial isometry u, vanishing on ker |x|
  Element modulus;  // |x| = (x* x)^{1/2}, positive semidefinite
};

PolarDecomposition polar(const Element& x);

/// Weighted Schatten norm (tau(|x|^p))^{1/p}; p = inf gives the operator norm.
/// Rejects p < 1.
double lp_norm(const Element& x, double p);

Element abs_element(const Element& x);

/// Principal-branch complex power of a positive semidefinite element;
/// zero eigenvalues map to zero.
Element element_pow(const Element& x, cplx z);

/// Right-continuous decreasing step function on R^+: the generalized
/// singular value function mu(x).
struct MuStep {
  double value;
  double width;
};

struct MuFunction {
  std::vector<MuStep> steps;  // values strictly decreasing, widths > 0

  double value_at(double t) const;
  /// (integral of mu^p)^{1/p}
  double integral_norm(double p) const;
};

MuFunction mu(const Element& x);

/// E(x) = Sum (tau(x e_i)/tau(e_i)) e_i over a family of mutually orthogonal
/// projections with positive trace. Overlapping or trace-zero projections
/// are rejected.
Element conditional_expectation(const Element& x,
                                const std::vector<Element>& partition);

}  // namespace nclp
