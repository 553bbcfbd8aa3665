#pragma once

#include <functional>
#include <vector>

#include "nclp/algebra.hpp"

namespace nclp {

/// Atom of a sigma-simple function on R^+: one complex value held on a set
/// of the given measure. Atoms are laid out consecutively starting at 0.
struct Atom {
  cplx value;
  double measure;
};

class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  double norm(double p) const;  // p >= 1 or inf
  double total_measure() const;

  StepFunction map(const std::function<cplx(cplx)>& f) const;

 private:
  std::vector<Atom> atoms_;
};

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);
StepFunction operator*(cplx s, StepFunction f);

/// Rank function of f, atom by atom: on atom i it is r_f(t) = offset_i +
/// (t - start_i), where offset_i is the measure of {|f| > |value_i|} plus
/// the measure of earlier atoms with equal |value|.
struct RankSegment {
  double start;    // left endpoint of the atom on R^+
  double offset;   // r_f at the atom's left endpoint
  double measure;  // atom width
  cplx value;
};

std::vector<RankSegment> rank_function(const StepFunction& f);

/// r_f evaluated at position t (t inside the support).
double rank_at(const StepFunction& f, double t);

/// Decreasing rearrangement of |f|: atoms of |f| sorted by decreasing value,
/// equal values merged. Preserves every p-norm.
StepFunction rearrangement(const StepFunction& f);

/// Integrates expr over [lo, hi]. Handles integrable endpoint singularities
/// of logarithmic type at lo by dyadic refinement.
cplx integrate(const std::function<cplx(double)>& expr, double lo, double hi);

/// Level-set average: pools atoms of f with equal |value| and replaces the
/// expression by its mean over each pooled set. The output is constant on
/// level sets of |f|, hence lazy.
StepFunction laziness_project(const std::function<cplx(double)>& expr,
                              const StepFunction& f);

/// The two-variable Kalton-Peck map f * phi(log(|f|/||f||_p), log r_f).
/// When lazy is true the rank variable is resolved by level-set averaging;
/// otherwise callers should use kp_two_variable_pointwise directly.
StepFunction kp_two_variable(const StepFunction& f, double p,
                             const std::function<cplx(double, double)>& phi,
                             bool lazy = true);

/// Raw within-atom value of the two-variable map at position t.
cplx kp_two_variable_pointwise(const StepFunction& f, double p,
                               const std::function<cplx(double, double)>& phi,
                               double t);

enum class CommKind { kalton_peck, two_variable, phi_plus, phi_minus, custom };

/// Named, parameterized homogeneous map on StepFunctions. Built-in kinds are
/// exactly homogeneous and symmetric; kalton_peck and phi± are lazy, and
/// two_variable produces its lazy level-set projection.
class CommCentralizer {
 public:
  static CommCentralizer kalton_peck(double p);
  static CommCentralizer phi_plus(double p);
  static CommCentralizer phi_minus(double p);
  static CommCentralizer two_variable(
      double p, std::function<cplx(double, double)> phi);
  static CommCentralizer custom(
      double p, std::function<StepFunction(const StepFunction&)> map,
      bool lazy = false);

  CommKind kind() const { return kind_; }
  double p() const { return p_; }
  bool lazy() const { return lazy_; }

  StepFunction apply(const StepFunction& f) const;

 private:
  CommCentralizer() = default;
  CommKind kind_ = CommKind::custom;
  double p_ = 2.0;
  bool lazy_ = false;
  std::function<cplx(double, double)> phi2_;
  std::function<StepFunction(const StepFunction&)> custom_;
};

/// ||Phi(f o perm) - (Phi f) o perm||_p / ||f||_p for a permutation of
/// equal-measure atoms. Measure-mismatched permutations are rejected.
double symmetry_defect(const CommCentralizer& phi, const StepFunction& f,
                       const std::vector<std::size_t>& perm);

/// Splits Phi into two real centralizers with Phi ~ Phi1 + i Phi2:
/// Phi1(f) = Re Phi(Re f) + i Re Phi(Im f),
/// Phi2(f) = Im Phi(Re f) - i Im Phi(Im f).
std::pair<CommCentralizer, CommCentralizer> real_decomposition(
    const CommCentralizer& phi);

}  // namespace nclp
