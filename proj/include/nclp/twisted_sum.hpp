#pragma once

#include <optional>
#include <vector>

#include "nclp/centralizer.hpp"

namespace nclp {

/// Point of the twisted sum L^p +_Omega L^p: ambient coordinate g, quotient
/// coordinate f, glued by the centralizer.
struct TwistedPair {
  Element g;
  Element f;
  NCCentralizer omega;
  double p;
};

/// ||g - Omega(f)||_p + ||f||_p, with Omega(0) = 0.
double quasi_norm(const TwistedPair& pair);

/// (a g b, a f b); omit b for the left action.
TwistedPair module_action(const Element& a, const TwistedPair& pair,
                          const std::optional<Element>& b = std::nullopt);

struct NontrivialityWitness {
  AlgebraPtr algebra;
  Element f;
  double ratio;  // || Omega_p(f) - phi(f) ||_p / ||f||_p, equals log n
};

/// Diagonal algebra with projection traces w_i, f = (n w_i)^{-1/p} e_i,
/// measured against the optimal diagonal morphism phi_i = -log w_i.
NontrivialityWitness nontriviality_witness(const std::vector<double>& weights,
                                           double p);

/// tau(x w - y v) for (x,y) in the q-side twisted sum and (v,w) in the
/// p-side one; p and q must be conjugate.
cplx duality_pairing(const TwistedPair& xy, const TwistedPair& vw);

struct GridSpec {
  double lo = 1e-6;
  double hi = 1e6;
  int points_per_axis = 1000;
};

/// max over the log-spaced grid of
/// |t s log(|t|^q / |s|^p)| / ((max(p,q)/e)(|t|^q + |s|^p)); always <= 1.
double elementary_inequality_check(double p, const GridSpec& grid);

/// lhs = |tau(Phi_q(y) w - y Phi_p(w))|, rhs = 2 max(p,q) L / e, for diagonal
/// positive normalized y, w (||y||_q = ||w||_p = 1) and 1 < p <= 2.
std::pair<double, double> sigma_elementary_duality_bound(
    const Element& y, const Element& w, double p, const ScalarFunction& phi);

}  // namespace nclp
