#include "nclp/twisted_sum.hpp"

#include <cmath>
#include <stdexcept>

namespace nclp {

double quasi_norm(const TwistedPair& pair) {
  return lp_norm(pair.g - pair.omega.apply(pair.f), pair.p) +
         lp_norm(pair.f, pair.p);
}

TwistedPair module_action(const Element& a, const TwistedPair& pair,
                          const std::optional<Element>& b) {
  if (!same_algebra(a, pair.f)) throw std::invalid_argument("algebra mismatch");
  if (b) {
    if (!same_algebra(*b, pair.f)) throw std::invalid_argument("algebra mismatch");
    return {a * pair.g * (*b), a * pair.f * (*b), pair.omega, pair.p};
  }
  return {a * pair.g, a * pair.f, pair.omega, pair.p};
}

NontrivialityWitness nontriviality_witness(const std::vector<double>& weights,
                                           double p) {
  if (weights.empty())
    throw std::invalid_argument("nontriviality_witness: need n >= 1 weights");
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("nontriviality_witness: p must be in (1, inf)");
  const double n = static_cast<double>(weights.size());

  AlgebraPtr alg = make_diagonal_algebra(weights);
  Element f(alg);
  Element phif(alg);  // the optimal diagonal morphism applied to f
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double fi = std::pow(n * weights[i], -1.0 / p);
    f.block(i)(0, 0) = fi;
    phif.block(i)(0, 0) = -std::log(weights[i]) * fi;
  }
  const double ratio =
      lp_norm(omega_p(f, p) - phif, p) / lp_norm(f, p);
  return {std::move(alg), std::move(f), ratio};
}

cplx duality_pairing(const TwistedPair& xy, const TwistedPair& vw) {
  const double p = vw.p, q = xy.p;
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
    throw std::invalid_argument("duality_pairing: exponents are not conjugate");
  if (!same_algebra(xy.f, vw.f)) throw std::invalid_argument("algebra mismatch");
  return trace(xy.g * vw.f - xy.f * vw.g);
}

double elementary_inequality_check(double p, const GridSpec& grid) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("elementary_inequality_check: p in (1, inf)");
  if (grid.points_per_axis < 2 || !(grid.lo > 0.0) || !(grid.hi > grid.lo))
    throw std::invalid_argument("elementary_inequality_check: bad grid");
  const double q = p / (p - 1.0);
  // sharp constant: with c = max(p, q)/e the supremum of the ratio is
  // approached but never reached (the p/e variant fails for p < 2, e.g.
  // t = 1/e, s = 1).
  const double scale = std::max(p, q) / std::exp(1.0);
  const double llo = std::log(grid.lo), lhi = std::log(grid.hi);
  const int n = grid.points_per_axis;

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / (n - 1));
    const double tq = std::pow(t, q);
    for (int j = 0; j < n; ++j) {
      const double s = std::exp(llo + (lhi - llo) * j / (n - 1));
      const double sp = std::pow(s, p);
      const double ratio =
          std::abs(t * s * std::log(tq / sp)) / (scale * (tq + sp));
      if (ratio > worst) worst = ratio;
    }
  }
  return worst;
}

namespace {

void check_diagonal_positive(const Element& x, const char* who) {
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    const Mat& m = x.block(k);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i != j && std::abs(m(i, j)) > 1e-12 * (1.0 + x.max_abs()))
          throw std::invalid_argument(std::string(who) + ": not diagonal");
      }
      if (m(i, i).real() < 0.0 || std::abs(m(i, i).imag()) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": not positive");
    }
  }
}

}  // namespace

std::pair<double, double> sigma_elementary_duality_bound(
    const Element& y, const Element& w, double p, const ScalarFunction& phi) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("sigma_elementary_duality_bound: need 1 < p <= 2");
  const double q = p / (p - 1.0);
  check_diagonal_positive(y, "sigma_elementary_duality_bound(y)");
  check_diagonal_positive(w, "sigma_elementary_duality_bound(w)");
  if (std::abs(lp_norm(y, q) - 1.0) > 1e-9 || std::abs(lp_norm(w, p) - 1.0) > 1e-9)
    throw std::invalid_argument(
        "sigma_elementary_duality_bound: inputs must be normalized");

  const Element phiy = kp_lipschitz(y, q, phi.fn);
  const Element phiw = kp_lipschitz(w, p, phi.fn);
  const double lhs = std::abs(trace(phiy * w - y * phiw));
  // endpoint of the sigma-elementary chain with the sharp elementary
  // inequality constant max(p,q)/e
  const double rhs = 2.0 * std::max(p, q) * phi.lipschitz / std::exp(1.0);
  return {lhs, rhs};
}

}  // namespace nclp
