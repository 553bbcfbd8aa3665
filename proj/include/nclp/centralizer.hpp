#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "nclp/calculus.hpp"
#include "nclp/step_function.hpp"

namespace nclp {

/// Scalar function together with its Lipschitz constant (used in the
/// bicentralizer constant 2pL/e and friends).
struct ScalarFunction {
  std::string name;
  std::function<cplx(double)> fn;
  double lipschitz = 1.0;

  static ScalarFunction identity();
  static ScalarFunction constant(double c);
  static ScalarFunction pos_part();
  static ScalarFunction neg_part();
  static ScalarFunction clip(double a, double b);
};

enum class NCKind { omega_p, lipschitz, phi_plus, phi_minus, lifted };

/// Homogeneous, left-unitarily equivariant maps on L^p of the algebra.
class NCCentralizer {
 public:
  static NCCentralizer omega(double p);
  static NCCentralizer lipschitz(double p, ScalarFunction phi);
  static NCCentralizer phi_plus(double p);
  static NCCentralizer phi_minus(double p);
  static NCCentralizer lifted(double p, CommCentralizer comm);

  NCKind kind() const { return kind_; }
  double p() const { return p_; }
  const ScalarFunction& phi() const { return phi_; }

  Element apply(const Element& x) const;

 private:
  NCCentralizer() = default;
  NCKind kind_ = NCKind::omega_p;
  double p_ = 2.0;
  ScalarFunction phi_;
  std::optional<CommCentralizer> comm_;
};

/// Omega_p(x) = p * u * |x| * log(|x| / ||x||_p), x = u|x| polar.
Element omega_p(const Element& x, double p);

/// u * |x| * phi(p * log(|x| / ||x||_p)).
Element kp_lipschitz(const Element& x, double p,
                     const std::function<cplx(double)>& phi);

/// u * |x| * i^{+/-}(log(|x| / ||x||_p)), unscaled argument.
Element phi_pm(const Element& x, double p, int sign);

/// Spectral lifting of a lazy commutative centralizer: |x| is read off as a
/// StepFunction (atoms ordered by decreasing singular value, widths = trace
/// of the spectral projections), Phi applied there, pulled back through the
/// same projections and the phase of x.
Element lift_centralizer(const CommCentralizer& comm, const Element& x, double p);

/// Seeded random-search lower bound for the quasi-linearity constant
/// Q: max ||O(f+g) - Of - Og||_p / (||f||_p + ||g||_p).
double estimate_Q(const NCCentralizer& omega, const AlgebraPtr& alg,
                  std::uint64_t seed, int trials);

/// Seeded random-search lower bound for the bicentralizer constant
/// C: max ||O(axb) - a O(x) b||_p / ||x||_p over contractions a, b.
double estimate_C(const NCCentralizer& omega, const AlgebraPtr& alg,
                  std::uint64_t seed, int trials);

/// Compression of Psi(x) onto the eigenspace block-diagonal of Hermitian x:
/// the exact finite-dimensional form of averaging over the diagonal unitary
/// group of a masa containing x's spectral projections.
Element commutant_correction(const NCCentralizer& psi, const Element& x);

}  // namespace nclp
