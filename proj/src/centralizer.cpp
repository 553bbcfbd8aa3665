#include "nclp/centralizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nclp/random.hpp"

namespace nclp {

ScalarFunction ScalarFunction::identity() {
  return {"identity", [](double t) -> cplx { return t; }, 1.0};
}

ScalarFunction ScalarFunction::constant(double c) {
  return {"const", [c](double) -> cplx { return c; }, 0.0};
}

ScalarFunction ScalarFunction::pos_part() {
  return {"pos_part", [](double t) -> cplx { return std::max(0.0, t); }, 1.0};
}

ScalarFunction ScalarFunction::neg_part() {
  return {"neg_part", [](double t) -> cplx { return std::min(0.0, t); }, 1.0};
}

ScalarFunction ScalarFunction::clip(double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("clip: a > b");
  return {"clip", [a, b](double t) -> cplx { return std::clamp(t, a, b); }, 1.0};
}

namespace {

void check_p(double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("centralizer: p must be in (1, inf)");
}

// u * g(|x|) for a scalar g on the singular values, with g depending on
// ||x||_p. Shared kernel of all built-in kinds.
Element phase_calc(const Element& x, const std::function<cplx(double)>& g) {
  PolarDecomposition pd = polar(x);
  return pd.phase * func_calc(pd.modulus, g);
}

}  // namespace

Element omega_p(const Element& x, double p) {
  check_p(p);
  if (x.frobenius() == 0.0) return Element(x.algebra());
  const double n = lp_norm(x, p);
  return phase_calc(x, [p, n](double t) -> cplx {
    if (t <= 0.0) return 0.0;
    return p * t * std::log(t / n);
  });
}

Element kp_lipschitz(const Element& x, double p,
                     const std::function<cplx(double)>& phi) {
  check_p(p);
  if (x.frobenius() == 0.0) return Element(x.algebra());
  const double n = lp_norm(x, p);
  return phase_calc(x, [p, n, &phi](double t) -> cplx {
    if (t <= 0.0) return 0.0;
    return t * phi(p * std::log(t / n));
  });
}

Element phi_pm(const Element& x, double p, int sign) {
  check_p(p);
  if (sign != 1 && sign != -1) throw std::invalid_argument("phi_pm: sign must be +/-1");
  if (x.frobenius() == 0.0) return Element(x.algebra());
  const double n = lp_norm(x, p);
  return phase_calc(x, [n, sign](double t) -> cplx {
    if (t <= 0.0) return 0.0;
    const double s = std::log(t / n);
    return t * (sign > 0 ? std::max(0.0, s) : std::min(0.0, s));
  });
}

Element lift_centralizer(const CommCentralizer& comm, const Element& x, double p) {
  check_p(p);
  if (!comm.lazy())
    throw std::invalid_argument("lift_centralizer: centralizer must be lazy");
  if (x.frobenius() == 0.0) return Element(x.algebra());

  PolarDecomposition pd = polar(x);
  SpectralData sd = spectral(pd.modulus);

  // the canonical xi: atoms in decreasing singular value order, widths tau(e_j)
  std::vector<Atom> atoms;
  std::vector<std::size_t> which;  // spectral index behind each atom
  for (std::size_t j = 0; j < sd.values.size(); ++j) {
    if (sd.values[j] > 0.0) {
      atoms.push_back({sd.values[j], trace(sd.projections[j]).real()});
      which.push_back(j);
    }
  }
  if (atoms.empty()) return Element(x.algebra());

  const StepFunction out = comm.apply(StepFunction(atoms));
  Element r(x.algebra());
  for (std::size_t i = 0; i < which.size(); ++i)
    r += out.atoms()[i].value * sd.projections[which[i]];
  return pd.phase * r;
}

NCCentralizer NCCentralizer::omega(double p) {
  check_p(p);
  NCCentralizer c;
  c.kind_ = NCKind::omega_p;
  c.p_ = p;
  return c;
}

NCCentralizer NCCentralizer::lipschitz(double p, ScalarFunction phi) {
  check_p(p);
  NCCentralizer c;
  c.kind_ = NCKind::lipschitz;
  c.p_ = p;
  c.phi_ = std::move(phi);
  return c;
}

NCCentralizer NCCentralizer::phi_plus(double p) {
  check_p(p);
  NCCentralizer c;
  c.kind_ = NCKind::phi_plus;
  c.p_ = p;
  return c;
}

NCCentralizer NCCentralizer::phi_minus(double p) {
  check_p(p);
  NCCentralizer c;
  c.kind_ = NCKind::phi_minus;
  c.p_ = p;
  return c;
}

NCCentralizer NCCentralizer::lifted(double p, CommCentralizer comm) {
  check_p(p);
  if (!comm.lazy())
    throw std::invalid_argument("NCCentralizer::lifted: centralizer must be lazy");
  NCCentralizer c;
  c.kind_ = NCKind::lifted;
  c.p_ = p;
  c.comm_ = std::move(comm);
  return c;
}

Element NCCentralizer::apply(const Element& x) const {
  switch (kind_) {
    case NCKind::omega_p:
      return nclp::omega_p(x, p_);
    case NCKind::lipschitz:
      return kp_lipschitz(x, p_, phi_.fn);
    case NCKind::phi_plus:
      return phi_pm(x, p_, +1);
    case NCKind::phi_minus:
      return phi_pm(x, p_, -1);
    case NCKind::lifted:
      return lift_centralizer(*comm_, x, p_);
  }
  throw std::logic_error("unreachable");
}

double estimate_Q(const NCCentralizer& omega, const AlgebraPtr& alg,
                  std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("estimate_Q: trials < 1");
  const double p = omega.p();
  double best = 0.0;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    const Element f = random_element(alg, rng);
    const Element g = random_element(alg, rng);
    const double denom = lp_norm(f, p) + lp_norm(g, p);
    if (denom == 0.0) continue;
    const double defect =
        lp_norm(omega.apply(f + g) - omega.apply(f) - omega.apply(g), p);
    best = std::max(best, defect / denom);
  }
  return best;
}

double estimate_C(const NCCentralizer& omega, const AlgebraPtr& alg,
                  std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("estimate_C: trials < 1");
  const double p = omega.p();
  const double inf = std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, 0x5eedc0de ^ static_cast<std::uint64_t>(i));
    Element a = random_element(alg, rng);
    Element b = random_element(alg, rng);
    const Element x = random_element(alg, rng);
    const double na = lp_norm(a, inf), nb = lp_norm(b, inf);
    if (na > 0.0) a *= cplx(1.0 / na, 0.0);
    if (nb > 0.0) b *= cplx(1.0 / nb, 0.0);
    const double nx = lp_norm(x, p);
    if (nx == 0.0) continue;
    const double defect =
        lp_norm(omega.apply(a * x * b) - a * omega.apply(x) * b, p);
    best = std::max(best, defect / nx);
  }
  return best;
}

Element commutant_correction(const NCCentralizer& psi, const Element& x) {
  if (!x.is_hermitian())
    throw std::invalid_argument("commutant_correction: x must be Hermitian");
  SpectralData sd = spectral(x);
  const Element y = psi.apply(x);
  Element r(x.algebra());
  for (const Element& e : sd.projections) r += e * y * e;
  return r;
}

}  // namespace nclp
