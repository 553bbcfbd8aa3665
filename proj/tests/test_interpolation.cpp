#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nclp/interpolation.hpp"
#include "nclp/random.hpp"

using namespace nclp;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double inf = std::numeric_limits<double>::infinity();

StateDensity normalized_density(const AlgebraPtr& alg, std::mt19937_64& rng) {
  Element d = random_positive(alg, rng);
  d *= cplx(1.0 / trace(d).real(), 0.0);
  return StateDensity(d, 1.0);
}

}  // namespace

TEST_CASE("strip evaluation and differentiation") {
  auto alg = make_algebra({{2, 1.0}});
  auto rng = substream(41, 0);
  Element a = random_element(alg, rng);

  StripFunction constant{0.0, {{0.0, a}}};
  CHECK((eval(constant, cplx(0.3, 5.0)) - a).frobenius() < 1e-14);
  CHECK(deriv(constant, cplx(0.3, 5.0)).frobenius() < 1e-14);

  StripFunction expz{0.0, {{1.0, a}}};
  CHECK((eval(expz, 0.0) - a).frobenius() < 1e-14);
  CHECK((deriv(expz, 0.0) - a).frobenius() < 1e-14);

  // derivative vs central finite difference
  StripFunction F{0.7, {{0.5, a}, {-1.2, cplx(0.0, 1.0) * a}}};
  const double h = 1e-5, theta = 0.4;
  Element fd = (1.0 / (2.0 * h)) * (eval(F, theta + h) - eval(F, theta - h));
  Element an = deriv(F, theta);
  CHECK((fd - an).frobenius() < 1e-8 * (1.0 + an.frobenius()));

  CHECK_THROWS(eval(F, cplx(-0.5, 0.0)));
  CHECK_THROWS(eval(F, cplx(1.5, 0.0)));
  CHECK_THROWS(deriv(F, cplx(2.0, 1.0)));
}

TEST_CASE("state density validation") {
  auto alg = make_algebra({{2, 1.0}});
  Element d(alg);
  d.block(0)(0, 0) = 1.0;
  d.block(0)(1, 1) = 1.0;
  CHECK_NOTHROW(StateDensity(d, 2.0));
  CHECK_THROWS(StateDensity(d, 1.0));  // trace mismatch
  Element sing(alg);
  sing.block(0)(0, 0) = 2.0;  // second eigenvalue 0: not faithful
  CHECK_THROWS(StateDensity(sing, 2.0));
  Element nonherm(alg);
  nonherm.block(0)(0, 1) = 1.0;
  CHECK_THROWS(StateDensity(nonherm, 1.0));
  CHECK_THROWS(StateDensity(d, -2.0));
}

TEST_CASE("boundary norm sampling and envelope") {
  auto alg = make_algebra({{2, 1.0}});
  auto rng = substream(42, 0);
  Element a = random_element(alg, rng);
  auto couple = InterpolationCouple::make_M_L1();

  StripFunction F{1.0, {{0.0, a}}};
  BoundaryNorm bn = boundary_norm(F, couple);
  // the even Gaussian attains its boundary sup at t = 0
  const double line0 = lp_norm(a, inf);
  const double line1 = std::exp(1.0) * lp_norm(a, 1.0);
  CHECK(bn.sampled == doctest::Approx(std::max(line0, line1)).epsilon(1e-12));
  CHECK(bn.value == doctest::Approx(std::max(line0, line1)).epsilon(1e-12));
  CHECK(bn.tail < 1e-10 * bn.value);

  // homogeneity
  StripFunction G{1.0, {{0.0, cplx(3.0, 0.0) * a}}};
  CHECK(boundary_norm(G, couple).value == doctest::Approx(3.0 * bn.value).epsilon(1e-12));

  StripFunction flat{0.0, {{0.0, a}}};
  CHECK_THROWS(boundary_norm(flat, couple));
}

TEST_CASE("conformal factor") {
  const double theta = 0.37;
  CHECK(std::abs(conformal_factor(theta, theta)) < 1e-14);
  for (double t : {-3.0, -0.5, 0.0, 1.0, 8.0}) {
    CHECK(std::abs(conformal_factor(cplx(0.0, t), theta)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(conformal_factor(cplx(1.0, t), theta)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // |phi'(theta)| = pi / (2 sin(pi theta)); at theta = 1/2 this is pi/2
  const double h = 1e-6;
  for (double th : {0.5, 0.3}) {
    const double fd =
        std::abs(conformal_factor(th + h, th) - conformal_factor(th - h, th)) /
        (2.0 * h);
    CHECK(fd == doctest::Approx(kPi / (2.0 * std::sin(kPi * th))).epsilon(1e-8));
  }
}

TEST_CASE("derivative bound check") {
  auto alg = make_algebra({{2, 1.0}});
  auto couple = InterpolationCouple::make_M_L1();
  const double theta = 0.5;

  // zero function gives (0, 0)
  StripFunction zero{1.0, {{0.0, Element(alg)}}};
  auto [zl, zr] = derivative_bound_check(zero, couple, theta);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);

  // compensated random terms vanish at theta and satisfy the bound
  for (int i = 0; i < 10; ++i) {
    auto rng = substream(43, i);
    std::uniform_real_distribution<double> rate(-1.0, 1.0);
    StripFunction F;
    F.lambda = 1.0;
    Element comp(alg);
    for (int t = 0; t < 3; ++t) {
      const double rt = rate(rng);
      Element a = random_element(alg, rng);
      F.terms.push_back({rt, a});
      comp -= std::exp(rt * theta) * a;
    }
    F.terms.push_back({0.0, comp});
    auto [lhs, rhs] = derivative_bound_check(F, couple, theta, 12.0, 1.0 / 32.0);
    CHECK(lhs <= rhs * (1.0 + 1e-3));
  }

  // a function that does not vanish at theta is rejected
  auto rng = substream(43, 99);
  StripFunction bad{1.0, {{0.0, random_element(alg, rng)}}};
  CHECK_THROWS(derivative_bound_check(bad, couple, theta));
}

TEST_CASE("power extremal gives the Rochberg-Weiss pair") {
  const double p = 2.0;
  auto alg = make_algebra({{3, 1.0}});
  auto rng = substream(44, 0);
  Element f = random_positive(alg, rng);
  f *= cplx(1.0 / lp_norm(f, p), 0.0);

  StripFunction F = power_extremal(f, p);
  TwistedPair pair = rw_pair(F, NCCentralizer::omega(p), 1.0 / p);
  CHECK((pair.f - f).frobenius() < 1e-12);
  CHECK(lp_norm(pair.g - omega_p(f, p), p) < 1e-10);
  CHECK(quasi_norm(pair) == doctest::Approx(1.0).epsilon(1e-10));

  Element nonpos(alg);
  nonpos.block(0)(0, 1) = 1.0;
  CHECK_THROWS(power_extremal(nonpos, p));
  CHECK_THROWS(power_extremal(Element(alg), p));
}

TEST_CASE("kosaki norm endpoints and formulas") {
  auto alg = make_algebra({{3, 1.0}});
  auto rng = substream(45, 0);
  StateDensity d = normalized_density(alg, rng);
  Element a = random_element(alg, rng);

  CHECK(kosaki_norm(a, d, inf, Side::left) == doctest::Approx(lp_norm(a, inf)));
  CHECK(kosaki_norm(a, d, 1.0, Side::left) ==
        doctest::Approx(lp_norm(a * d.d, 1.0)).epsilon(1e-12));
  CHECK(kosaki_norm(a, d, 1.0, Side::right) ==
        doctest::Approx(lp_norm(d.d * a, 1.0)).epsilon(1e-12));
  CHECK_THROWS(kosaki_norm(a, d, 0.5, Side::left));

  // tracial scaling law: ||a (c 1)^{1/p}||_p = c^{1/p} ||a||_p
  const double c = 0.37, p = 2.5;
  Element cd = cplx(c, 0.0) * Element::identity(alg);
  StateDensity tracial(cd, trace(cd).real());
  CHECK(kosaki_norm(a, tracial, p, Side::left) ==
        doctest::Approx(std::pow(c, 1.0 / p) * lp_norm(a, p)).epsilon(1e-12));
}

TEST_CASE("kosaki derivation reduces to omega_p in the tracial state") {
  const double p = 2.0;
  auto alg = make_algebra({{4, 0.25}});  // total trace 1
  StateDensity d(Element::identity(alg), 1.0);
  auto rng = substream(46, 0);
  Element a = random_positive(alg, rng);
  Element out = kosaki_derivation_left(a, d, p);
  CHECK(lp_norm(out - omega_p(a, p), p) < 1e-10 * lp_norm(a, p));
}

TEST_CASE("kosaki derivations in the commuting diagonal case") {
  const double p = 1.5, q = 3.0;
  auto alg = make_diagonal_algebra({1.0, 0.5, 2.0});
  auto rng = substream(47, 0);
  std::uniform_real_distribution<double> val(0.2, 2.0);
  Element a(alg), d(alg);
  double mass = 0.0;
  for (int k = 0; k < 3; ++k) {
    a.block(k)(0, 0) = val(rng);
    d.block(k)(0, 0) = val(rng);
    mass += alg->blocks()[k].weight * d.block(k)(0, 0).real();
  }
  StateDensity sd(d, mass);

  // left: density p a log(a) w atomwise for a normalized in Kosaki norm
  const double n = kosaki_norm(a, sd, p, Side::left);
  Element an = (1.0 / n) * a;
  Element left = kosaki_derivation_left(an, sd, p);
  for (int k = 0; k < 3; ++k) {
    const double av = an.block(k)(0, 0).real();
    const double wv = d.block(k)(0, 0).real();
    CHECK(left.block(k)(0, 0).real() ==
          doctest::Approx(p * av * std::log(av) * wv).epsilon(1e-10));
  }

  // right: density q b log(b) w atomwise
  Element b(alg);
  for (int k = 0; k < 3; ++k) b.block(k)(0, 0) = val(rng);
  const double nr = kosaki_norm(b, sd, q, Side::right);
  Element bn = (1.0 / nr) * b;
  Element right = kosaki_derivation_right(bn, sd, q);
  for (int k = 0; k < 3; ++k) {
    const double bv = bn.block(k)(0, 0).real();
    const double wv = d.block(k)(0, 0).real();
    CHECK(right.block(k)(0, 0).real() ==
          doctest::Approx(q * bv * std::log(bv) * wv).epsilon(1e-10));
  }
}

TEST_CASE("kosaki derivation kills flat spectrum with the flat state") {
  const double p = 2.0;
  auto alg = make_algebra({{3, 1.0}});
  Element d = cplx(1.0 / 3.0, 0.0) * Element::identity(alg);
  StateDensity sd(d, 1.0);
  Element a = Element::identity(alg);
  CHECK(kosaki_derivation_left(a, sd, p).frobenius() < 1e-12);
  CHECK(kosaki_derivation_left(Element(alg), sd, p).frobenius() == 0.0);
}

TEST_CASE("cocycle identities") {
  auto alg = make_algebra({{3, 1.0}});
  auto rng = substream(48, 0);
  StateDensity d0 = normalized_density(alg, rng);
  StateDensity d1 = normalized_density(alg, rng);
  StateDensity d2 = normalized_density(alg, rng);

  CHECK((cocycle(d0, d0, cplx(0.3, 1.7)) - Element::identity(alg)).frobenius() <
        1e-12);
  // at z = it the cocycle is unitary
  Element u = cocycle(d0, d1, cplx(0.0, 0.8));
  CHECK((u.adjoint() * u - Element::identity(alg)).frobenius() < 1e-10);
  CHECK(lp_norm(u, inf) == doctest::Approx(1.0).epsilon(1e-10));
  // chain rule
  const cplx z(0.0, -1.3);
  CHECK((cocycle(d0, d1, z) * cocycle(d1, d2, z) - cocycle(d0, d2, z)).frobenius() <
        1e-9);
}

TEST_CASE("change of state") {
  const double p = 2.0;
  auto alg = make_algebra({{4, 1.0}});
  auto rng = substream(49, 0);
  StateDensity d0 = normalized_density(alg, rng);
  StateDensity d1 = normalized_density(alg, rng);
  Element a = random_element(alg, rng);

  // equal states: identity, exactly
  CHECK((change_of_state(a, d0, d0, p) - a).frobenius() == 0.0);
  // isometry of the Kosaki norms
  Element moved = change_of_state(a, d0, d1, p);
  CHECK(kosaki_norm(moved, d1, p, Side::left) ==
        doctest::Approx(kosaki_norm(a, d0, p, Side::left)).epsilon(1e-8));
  // left-module equivariance
  Element bfac = random_element(alg, rng);
  CHECK((change_of_state(bfac * a, d0, d1, p) - bfac * moved).frobenius() <
        1e-10 * (1.0 + moved.frobenius()));
}

TEST_CASE("kosaki duality pairing is balanced and equivariant") {
  const double p = 2.0, q = 2.0;
  auto alg = make_algebra({{3, 1.0}});
  auto rng = substream(50, 0);
  StateDensity d = normalized_density(alg, rng);
  Element fp_ = random_element(alg, rng), f = random_element(alg, rng);
  Element gp = random_element(alg, rng), g = random_element(alg, rng);
  Element c = random_element(alg, rng);

  // substitution: only one beta term survives
  CHECK(std::abs(kosaki_duality_pairing(Element(alg), f, gp, Element(alg), d, p, q) -
                 trace(d.d * gp * f)) < 1e-12);

  // balancedness: beta(c f, g) = beta(f, g c)
  CHECK(std::abs(trace(d.d * g * (c * f)) - trace(d.d * (g * c) * f)) < 1e-12);

  // right-module equivariance: u((g', g) a)(f', f) = u(g', g)(a f', a f)
  const cplx left = kosaki_duality_pairing(fp_, f, gp * c, g * c, d, p, q);
  const cplx right = kosaki_duality_pairing(c * fp_, c * f, gp, g, d, p, q);
  CHECK(std::abs(left - right) < 1e-10);

  CHECK_THROWS(kosaki_duality_pairing(fp_, f, gp, g, d, 2.0, 3.0));
}

TEST_CASE("fan type estimate in the commuting case") {
  for (double p : {1.5, 2.0, 3.0}) {
    const double q = p / (p - 1.0);
    const double theta = 1.0 / p;
    for (int i = 0; i < 100; ++i) {
      auto rng = substream(51, static_cast<std::uint64_t>(p * 100) * 1000 + i);
      std::uniform_real_distribution<double> tw(0.25, 4.0), dw(0.2, 2.0),
          val(0.05, 3.0);
      const int n = 4;
      std::vector<double> tau(n);
      for (auto& t : tau) t = tw(rng);
      auto alg = make_diagonal_algebra(tau);
      Element a(alg), b(alg), d(alg);
      double mass = 0.0;
      for (int k = 0; k < n; ++k) {
        a.block(k)(0, 0) = val(rng);
        b.block(k)(0, 0) = val(rng);
        d.block(k)(0, 0) = dw(rng);
        mass += tau[k] * d.block(k)(0, 0).real();
      }
      StateDensity sd(d, mass);
      Element dinv = element_pow(d, -1.0);
      Element omf = kosaki_derivation_left(a, sd, p) * dinv;
      Element omg = dinv * kosaki_derivation_right(b, sd, q);
      auto beta = [&](const Element& x, const Element& y) {
        return trace(d * y * x);
      };
      const double lhs = std::abs(beta(omf, b) - beta(a, omg));
      const double rhs = (kPi / std::sin(kPi * theta)) *
                         kosaki_norm(a, sd, p, Side::left) *
                         kosaki_norm(b, sd, q, Side::right);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("kosaki theta norm continuity toward the endpoints") {
  auto alg = make_algebra({{3, 1.0}});
  auto rng = substream(52, 0);
  StateDensity d = normalized_density(alg, rng);
  Element a = random_element(alg, rng);
  CHECK(kosaki_norm(a, d, 100.0, Side::left) ==
        doctest::Approx(lp_norm(a, inf)).epsilon(0.2));
  CHECK(kosaki_norm(a, d, 1.01, Side::left) ==
        doctest::Approx(lp_norm(a * d.d, 1.0)).epsilon(0.2));
}
