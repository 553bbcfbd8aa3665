#include "nclp/interpolation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nclp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_strip(cplx z) {
  if (z.real() < -1e-12 || z.real() > 1.0 + 1e-12)
    throw std::invalid_argument("strip evaluation: Re z must lie in [0, 1]");
}

}  // namespace

Element eval(const StripFunction& F, cplx z) {
  check_strip(z);
  if (F.terms.empty()) throw std::invalid_argument("StripFunction: no terms");
  Element r(F.terms.front().coefficient.algebra());
  const cplx gauss = std::exp(F.lambda * z * z);
  for (const auto& t : F.terms) r += (gauss * std::exp(t.rate * z)) * t.coefficient;
  return r;
}

Element deriv(const StripFunction& F, cplx z) {
  check_strip(z);
  if (F.terms.empty()) throw std::invalid_argument("StripFunction: no terms");
  Element r(F.terms.front().coefficient.algebra());
  const cplx gauss = std::exp(F.lambda * z * z);
  for (const auto& t : F.terms)
    r += (gauss * std::exp(t.rate * z) * (t.rate + 2.0 * F.lambda * z)) *
         t.coefficient;
  return r;
}

StateDensity::StateDensity(Element density, double declared_mass)
    : d(std::move(density)), mass(declared_mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("StateDensity: mass must be > 0");
  if (!d.is_hermitian())
    throw std::invalid_argument("StateDensity: density must be Hermitian");
  const SpectralData sd = spectral(d);
  if (sd.values.empty() || !(sd.values.back() > 0.0))
    throw std::invalid_argument("StateDensity: density must be positive definite");
  if (std::abs(trace(d).real() - mass) > 1e-12 * std::max(1.0, mass))
    throw std::invalid_argument("StateDensity: trace does not match declared mass");
}

InterpolationCouple InterpolationCouple::make_M_L1() {
  InterpolationCouple c;
  c.kind_ = CoupleKind::M_L1;
  return c;
}

InterpolationCouple InterpolationCouple::make_kosaki_left(StateDensity d) {
  InterpolationCouple c;
  c.kind_ = CoupleKind::kosaki_left;
  c.dinv_ = element_pow(d.d, -1.0);
  c.d_ = std::move(d);
  return c;
}

InterpolationCouple InterpolationCouple::make_kosaki_right(StateDensity d) {
  InterpolationCouple c;
  c.kind_ = CoupleKind::kosaki_right;
  c.dinv_ = element_pow(d.d, -1.0);
  c.d_ = std::move(d);
  return c;
}

const StateDensity& InterpolationCouple::density() const {
  if (!d_) throw std::logic_error("InterpolationCouple: no density");
  return *d_;
}

double InterpolationCouple::boundary_norm_at(int j, const Element& h) const {
  const double inf = std::numeric_limits<double>::infinity();
  if (j == 1) return lp_norm(h, 1.0);
  if (j != 0) throw std::invalid_argument("boundary_norm_at: j must be 0 or 1");
  switch (kind_) {
    case CoupleKind::M_L1:
      return lp_norm(h, inf);
    case CoupleKind::kosaki_left:
      return lp_norm(h * (*dinv_), inf);
    case CoupleKind::kosaki_right:
      return lp_norm((*dinv_) * h, inf);
  }
  throw std::logic_error("unreachable");
}

double InterpolationCouple::theta_norm(double theta, const Element& h) const {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("theta_norm: theta in (0, 1)");
  const double p = 1.0 / theta;
  switch (kind_) {
    case CoupleKind::M_L1:
      return lp_norm(h, p);
    case CoupleKind::kosaki_left:
      return lp_norm(h * element_pow(d_->d, -(1.0 - theta)), p);
    case CoupleKind::kosaki_right:
      return lp_norm(element_pow(d_->d, -(1.0 - theta)) * h, p);
  }
  throw std::logic_error("unreachable");
}

BoundaryNorm boundary_norm(const StripFunction& F, const InterpolationCouple& couple,
                           double t_max, double t_step) {
  if (!(F.lambda > 0.0))
    throw std::invalid_argument("boundary_norm: lambda > 0 required for decay");
  if (!(t_max > 0.0) || !(t_step > 0.0))
    throw std::invalid_argument("boundary_norm: bad sampling window");

  double sampled = 0.0;
  for (int j = 0; j <= 1; ++j) {
    for (double t = -t_max; t <= t_max + 0.5 * t_step; t += t_step) {
      const Element v = eval(F, cplx(static_cast<double>(j), t));
      sampled = std::max(sampled, couple.boundary_norm_at(j, v));
    }
  }

  // |F(j+it)| <= exp(lambda (j^2 - t^2)) Sum exp(rate_i j) ||a_i||_j,
  // decreasing in |t|, so the envelope at t_max bounds the whole tail.
  double tail = 0.0;
  for (int j = 0; j <= 1; ++j) {
    double env = 0.0;
    for (const auto& term : F.terms)
      env += std::exp(term.rate * j) * couple.boundary_norm_at(j, term.coefficient);
    tail = std::max(tail, std::exp(F.lambda * (j * j - t_max * t_max)) * env);
  }
  return {sampled, tail, std::max(sampled, tail)};
}

cplx conformal_factor(cplx z, double theta) {
  check_strip(z);
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("conformal_factor: theta in (0, 1)");
  const cplx i(0.0, 1.0);
  const cplx e = std::exp(i * kPi * z);
  return (e - std::exp(i * kPi * theta)) / (e - std::exp(-i * kPi * theta));
}

std::pair<double, double> derivative_bound_check(const StripFunction& F,
                                                 const InterpolationCouple& couple,
                                                 double theta, double t_max,
                                                 double t_step) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("derivative_bound_check: theta in (0, 1)");
  const BoundaryNorm bn = boundary_norm(F, couple, t_max, t_step);
  const double interior = couple.theta_norm(theta, eval(F, theta));
  if (interior > 1e-10 * bn.value)
    throw std::invalid_argument("derivative_bound_check: F(theta) is not ~ 0");
  if (bn.value == 0.0) return {0.0, 0.0};
  const double lhs = couple.theta_norm(theta, deriv(F, theta));
  const double rhs = kPi / (2.0 * std::sin(kPi * theta)) * bn.value;
  return {lhs, rhs};
}

TwistedPair rw_pair(const StripFunction& F, const NCCentralizer& omega,
                    double theta) {
  return {deriv(F, theta), eval(F, theta), omega, omega.p()};
}

StripFunction power_extremal(const Element& f, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("power_extremal: p in (1, inf)");
  if (!f.is_hermitian())
    throw std::invalid_argument("power_extremal: f must be positive");
  const SpectralData sd = spectral(f);
  StripFunction F;
  F.lambda = 0.0;
  for (std::size_t j = 0; j < sd.values.size(); ++j) {
    if (sd.values[j] < -sd.tol)
      throw std::invalid_argument("power_extremal: f must be positive");
    if (sd.values[j] > 0.0)
      F.terms.push_back({p * std::log(sd.values[j]), sd.projections[j]});
  }
  if (F.terms.empty())
    throw std::invalid_argument("power_extremal: f = 0");
  return F;
}

double kosaki_norm(const Element& a, const StateDensity& d, double p, Side side) {
  if (!(p >= 1.0)) throw std::invalid_argument("kosaki_norm: p >= 1 required");
  if (std::isinf(p)) return lp_norm(a, p);
  const Element dp = element_pow(d.d, 1.0 / p);
  return side == Side::left ? lp_norm(a * dp, p) : lp_norm(dp * a, p);
}

namespace {

// Runtime admissibility of a closed-form extremal G for the Kosaki couple:
// interior value reproduces the target density, boundary norms stay <= 1.
void check_extremal(const std::function<Element(cplx)>& G, double theta,
                    const InterpolationCouple& couple, const Element& target) {
  const Element at_theta = G(theta);
  const double scale = lp_norm(target, 1.0) + 1e-300;
  if (lp_norm(at_theta - target, 1.0) > 1e-10 * scale)
    throw std::runtime_error("kosaki derivation: extremal misses its interior value");
  for (double t : {0.0, 0.7, 1.9, 4.3}) {
    for (int j = 0; j <= 1; ++j) {
      const double b = couple.boundary_norm_at(j, G(cplx(double(j), t)));
      if (b > 1.0 + 1e-8)
        throw std::runtime_error("kosaki derivation: extremal exceeds the boundary ball");
    }
  }
}

}  // namespace

Element kosaki_derivation_left(const Element& a, const StateDensity& d, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("kosaki_derivation_left: p in (1, inf)");
  if (a.frobenius() == 0.0) return Element(a.algebra());
  const double q = p / (p - 1.0);
  const double N = kosaki_norm(a, d, p, Side::left);

  const Element an = (1.0 / N) * a;
  const Element k = an * element_pow(d.d, 1.0 / p);
  const PolarDecomposition pd = polar(k);
  const Element& v = pd.phase;
  const Element& absk = pd.modulus;

  auto G = [&](cplx z) {
    return v * element_pow(absk, p * z) * element_pow(d.d, 1.0 - z);
  };
  check_extremal(G, 1.0 / p, InterpolationCouple::make_kosaki_left(d), an * d.d);

  const Element dq = element_pow(d.d, 1.0 / q);
  const Element logd = func_calc(d.d, [](double t) -> cplx { return std::log(t); });
  const Element ptlogt = func_calc(absk, [p](double t) -> cplx {
    return t > 0.0 ? p * t * std::log(t) : 0.0;
  });
  return N * (v * ptlogt * dq - v * absk * logd * dq);
}

Element kosaki_derivation_right(const Element& b, const StateDensity& d, double q) {
  if (!(q > 1.0) || std::isinf(q))
    throw std::invalid_argument("kosaki_derivation_right: q in (1, inf)");
  if (b.frobenius() == 0.0) return Element(b.algebra());
  const double p = q / (q - 1.0);
  const double N = kosaki_norm(b, d, q, Side::right);

  const Element bn = (1.0 / N) * b;
  const Element k = element_pow(d.d, 1.0 / q) * bn;
  const PolarDecomposition pd = polar(k);
  const Element& u = pd.phase;
  // k = |k*| u with the same partial isometry: |k*| = u |k| u*
  const Element abskstar = u * pd.modulus * u.adjoint();

  auto G = [&](cplx z) {
    return element_pow(d.d, 1.0 - z) * element_pow(abskstar, q * z) * u;
  };
  check_extremal(G, 1.0 / q, InterpolationCouple::make_kosaki_right(d), d.d * bn);

  const Element dp = element_pow(d.d, 1.0 / p);
  const Element logd = func_calc(d.d, [](double t) -> cplx { return std::log(t); });
  const Element qtlogt = func_calc(abskstar, [q](double t) -> cplx {
    return t > 0.0 ? q * t * std::log(t) : 0.0;
  });
  return N * (dp * qtlogt * u - logd * dp * abskstar * u);
}

Element cocycle(const StateDensity& d0, const StateDensity& d1, cplx z) {
  if (!same_algebra(d0.d, d1.d))
    throw std::invalid_argument("cocycle: densities live on different algebras");
  return element_pow(d0.d, z) * element_pow(d1.d, -z);
}

Element change_of_state(const Element& a, const StateDensity& d0,
                        const StateDensity& d1, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("change_of_state: p in (1, inf)");
  if ((d0.d - d1.d).frobenius() == 0.0) return a;
  return a * element_pow(d0.d, 1.0 / p) * element_pow(d1.d, -1.0 / p);
}

cplx kosaki_duality_pairing(const Element& fprime, const Element& f,
                            const Element& gprime, const Element& g,
                            const StateDensity& d, double p, double q) {
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
    throw std::invalid_argument("kosaki_duality_pairing: exponents not conjugate");
  auto beta = [&](const Element& x, const Element& y) {
    return trace(d.d * y * x);
  };
  return beta(f, gprime) + beta(fprime, g);
}

}  // namespace nclp
