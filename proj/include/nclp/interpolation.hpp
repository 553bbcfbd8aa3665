#pragma once

#include "nclp/twisted_sum.hpp"

namespace nclp {

/// Entire function on the closed strip 0 <= Re z <= 1:
///   F(z) = exp(lambda * z^2) * Sum_i exp(rate_i * z) * coefficient_i.
/// With lambda > 0 the Gaussian factor decays along vertical lines, since
/// Re(lambda z^2) = lambda (x^2 - t^2) at z = x + it.
struct StripTerm {
  double rate;
  Element coefficient;
};

struct StripFunction {
  double lambda = 0.0;  // >= 0
  std::vector<StripTerm> terms;
};

Element eval(const StripFunction& F, cplx z);
Element deriv(const StripFunction& F, cplx z);

/// Faithful positive functional phi(x) = tau(d x) given by its density.
struct StateDensity {
  Element d;
  double mass;  // declared tau(d); 1 for states

  StateDensity(Element density, double mass);
};

enum class CoupleKind { M_L1, kosaki_left, kosaki_right };

/// Compatible couple over one algebra. Elements of both endpoints are
/// represented by their L^1 density h:
///   M_L1:         X0 = (M, ||.||_inf), X1 = L^1(tau), h is the element itself;
///   kosaki_left:  X0 = M phi (h = a d),  X1 = predual, ||h||_0 = ||h d^-1||_inf;
///   kosaki_right: X0 = phi M (h = d b),  X1 = predual, ||h||_0 = ||d^-1 h||_inf.
class InterpolationCouple {
 public:
  static InterpolationCouple make_M_L1();
  static InterpolationCouple make_kosaki_left(StateDensity d);
  static InterpolationCouple make_kosaki_right(StateDensity d);

  CoupleKind kind() const { return kind_; }
  const StateDensity& density() const;

  double boundary_norm_at(int j, const Element& h) const;  // j = 0 or 1
  /// The interpolation norm at interior parameter theta = 1/p: the L^p norm
  /// for M_L1, and the Kosaki norm ||h d^{-1/q}||_p (resp. right) otherwise.
  double theta_norm(double theta, const Element& h) const;

 private:
  InterpolationCouple() = default;
  CoupleKind kind_ = CoupleKind::M_L1;
  std::optional<StateDensity> d_;
  std::optional<Element> dinv_;  // cached d^-1 for the boundary-0 norm
};

struct BoundaryNorm {
  double sampled;  // max over the sampled t-window on both boundary lines
  double tail;     // analytic envelope bound beyond the window
  double value;    // max(sampled, tail)
};

/// sup_t max_j ||F(j + it)||_j by uniform sampling on [-t_max, t_max] plus
/// the Gaussian tail envelope. Requires lambda > 0.
BoundaryNorm boundary_norm(const StripFunction& F, const InterpolationCouple& couple,
                           double t_max = 20.0, double t_step = 1.0 / 64.0);

/// (e^{i pi z} - e^{i pi theta}) / (e^{i pi z} - e^{-i pi theta}):
/// conformal map of the open strip onto the disc, vanishing at theta,
/// with |phi| = 1 on the boundary lines and |phi'(theta)| = pi/(2 sin(pi theta)).
cplx conformal_factor(cplx z, double theta);

/// ||F'(theta)||_theta versus (pi / (2 sin(pi theta))) * boundary_norm(F)
/// for F vanishing at theta. Returns (lhs, rhs).
std::pair<double, double> derivative_bound_check(const StripFunction& F,
                                                 const InterpolationCouple& couple,
                                                 double theta,
                                                 double t_max = 20.0,
                                                 double t_step = 1.0 / 64.0);

/// The Rochberg-Weiss pair (F'(theta), F(theta)) in the twisted sum.
TwistedPair rw_pair(const StripFunction& F, const NCCentralizer& omega,
                    double theta);

/// F(z) = f^{p z} for positive f, as a StripFunction (lambda = 0, one term
/// per positive spectral value).
StripFunction power_extremal(const Element& f, double p);

enum class Side { left, right };

/// left: ||a d^{1/p}||_p; right: ||d^{1/p} a||_p. p = inf gives ||a||_inf,
/// p = 1 gives the predual norm ||a d||_1 (resp. ||d a||_1).
double kosaki_norm(const Element& a, const StateDensity& d, double p, Side side);

/// Interpolation derivation of the Kosaki left L^p space at theta = 1/p,
/// returned as an L^1 density. Computed from the closed-form extremal
/// G(z) = v |k|^{p z} d^{1-z} with k = a d^{1/p} = v |k| (after normalizing
/// a to Kosaki norm 1), rescaled back by homogeneity; the extremal's
/// interior value and boundary bounds are verified at runtime.
Element kosaki_derivation_left(const Element& a, const StateDensity& d, double p);

/// Right-sided analogue from G(z) = d^{1-z} |k*|^{q z} u, k = d^{1/q} b.
Element kosaki_derivation_right(const Element& b, const StateDensity& d, double q);

/// d0^z * d1^{-z}; at z = it this is the cocycle comparing the two states.
Element cocycle(const StateDensity& d0, const StateDensity& d1, cplx z);

/// Coefficient of the state-change isomorphism in the phi_1 picture:
/// a * d0^{1/p} * d1^{-1/p}; preserves the Kosaki left norm.
Element change_of_state(const Element& a, const StateDensity& d0,
                        const StateDensity& d1, double p);

/// u(g', g)(f', f) = beta(f, g') + beta(f', g) with beta(a, b) = tau(d b a),
/// pairing the left p-side point (f', f) against the right q-side (g', g).
cplx kosaki_duality_pairing(const Element& fprime, const Element& f,
                            const Element& gprime, const Element& g,
                            const StateDensity& d, double p, double q);

}  // namespace nclp
