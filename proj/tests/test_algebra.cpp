#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nclp/calculus.hpp"
#include "nclp/random.hpp"

using namespace nclp;

namespace {
const double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("algebra validation") {
  CHECK_THROWS(make_algebra({}));
  CHECK_THROWS(make_algebra({{0, 1.0}}));
  CHECK_THROWS(make_algebra({{2, 0.0}}));
  CHECK_THROWS(make_algebra({{2, -1.0}}));
  auto alg = make_algebra({{2, 0.5}, {3, 2.0}});
  CHECK(alg->total_dim() == 5);
  CHECK(alg->total_trace() == doctest::Approx(2 * 0.5 + 3 * 2.0));
}

TEST_CASE("trace weights blocks") {
  auto alg = make_algebra({{2, 0.5}, {1, 3.0}});
  Element e = Element::identity(alg);
  CHECK(trace(e).real() == doctest::Approx(2 * 0.5 + 3.0));
  CHECK(trace(e).imag() == doctest::Approx(0.0));
}

TEST_CASE("weighted Schatten norms") {
  auto alg = make_algebra({{2, 1.0}});
  Element x(alg);
  x.block(0)(0, 0) = 3.0;
  x.block(0)(1, 1) = 4.0;
  CHECK(lp_norm(x, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lp_norm(x, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(lp_norm(x, inf) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS(lp_norm(x, 0.5));

  // weight w rescales the p-norm by w^{1/p} and leaves the sup norm alone
  auto walg = make_algebra({{2, 2.0}});
  Element y(walg);
  y.block(0) = x.block(0);
  CHECK(lp_norm(y, 2.0) ==
        doctest::Approx(std::pow(2.0, 0.5) * 5.0).epsilon(1e-14));
  CHECK(lp_norm(y, inf) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("spectral decomposition reconstructs and groups") {
  auto alg = make_algebra({{3, 1.0}});
  Element x(alg);
  x.block(0)(0, 0) = 2.0;
  x.block(0)(1, 1) = 1.0;
  x.block(0)(2, 2) = 1.0 + 1e-12;  // within grouping tolerance of 1
  SpectralData sd = spectral(x);
  CHECK(sd.values.size() == 2);
  CHECK(sd.values[0] == doctest::Approx(2.0));
  Element rec(alg);
  for (std::size_t i = 0; i < sd.values.size(); ++i)
    rec += sd.values[i] * sd.projections[i];
  CHECK((rec - x).frobenius() < 1e-10);
  // projections are orthogonal idempotents
  for (std::size_t i = 0; i < sd.projections.size(); ++i) {
    const Element& e = sd.projections[i];
    CHECK((e * e - e).frobenius() < 1e-12);
    for (std::size_t j = 0; j < i; ++j)
      CHECK((e * sd.projections[j]).frobenius() < 1e-12);
  }
  Element nonherm(alg);
  nonherm.block(0)(0, 1) = 1.0;
  CHECK_THROWS(spectral(nonherm));
}

TEST_CASE("functional calculus square") {
  auto alg = make_algebra({{4, 1.0}});
  auto rng = substream(2, 0);
  Element x = random_hermitian(alg, rng);
  Element sq = func_calc(x, [](double t) -> cplx { return t * t; });
  CHECK((sq - x * x).frobenius() < 1e-10 * (1 + x.frobenius()));
}

TEST_CASE("polar decomposition") {
  auto alg = make_algebra({{3, 1.0}, {2, 0.5}});
  auto rng = substream(3, 0);
  Element x = random_element(alg, rng);
  PolarDecomposition pd = polar(x);
  CHECK((pd.phase * pd.modulus - x).frobenius() < 1e-12 * x.frobenius());
  CHECK(pd.modulus.is_hermitian());
  // u is a partial isometry: u u* u = u
  Element u = pd.phase;
  CHECK((u * u.adjoint() * u - u).frobenius() < 1e-12);
  // |x|^2 = x* x
  CHECK((pd.modulus * pd.modulus - x.adjoint() * x).frobenius() <
        1e-10 * (1 + x.frobenius()));
}

TEST_CASE("element_pow roots and zeros") {
  auto alg = make_algebra({{2, 1.0}});
  Element d(alg);
  d.block(0)(0, 0) = 4.0;
  d.block(0)(1, 1) = 0.0;  // zero eigenvalue maps to zero
  Element r = element_pow(d, 0.5);
  CHECK(r.block(0)(0, 0).real() == doctest::Approx(2.0));
  CHECK(std::abs(r.block(0)(1, 1)) < 1e-14);
  Element back = element_pow(d, cplx(0.5, 0.0)) * element_pow(d, cplx(0.5, 0.0));
  CHECK((back - d).frobenius() < 1e-12);
}

TEST_CASE("mu is the decreasing singular value function") {
  auto alg = make_algebra({{2, 1.0}, {1, 3.0}});
  Element x(alg);
  x.block(0)(0, 0) = 1.0;
  x.block(0)(1, 1) = 5.0;
  x.block(1)(0, 0) = 2.0;
  MuFunction m = mu(x);
  REQUIRE(m.steps.size() == 3);
  CHECK(m.steps[0].value == doctest::Approx(5.0));
  CHECK(m.steps[0].width == doctest::Approx(1.0));
  CHECK(m.steps[1].value == doctest::Approx(2.0));
  CHECK(m.steps[1].width == doctest::Approx(3.0));
  CHECK(m.steps[2].value == doctest::Approx(1.0));
  CHECK(m.value_at(0.5) == doctest::Approx(5.0));
  CHECK(m.value_at(2.0) == doctest::Approx(2.0));
  CHECK(m.value_at(100.0) == 0.0);
  for (double p : {1.0, 1.7, 2.0, 3.5})
    CHECK(m.integral_norm(p) == doctest::Approx(lp_norm(x, p)).epsilon(1e-12));
}

TEST_CASE("mu of zero is empty") {
  auto alg = make_algebra({{2, 1.0}});
  CHECK(mu(Element(alg)).steps.empty());
}

TEST_CASE("conditional expectation") {
  auto alg = make_algebra({{2, 1.0}});
  Element e1(alg), e2(alg);
  e1.block(0)(0, 0) = 1.0;
  e2.block(0)(1, 1) = 1.0;
  auto rng = substream(4, 0);
  Element x = random_element(alg, rng);
  Element ex = conditional_expectation(x, {e1, e2});
  CHECK(ex.block(0)(0, 0) == x.block(0)(0, 0));
  CHECK(ex.block(0)(1, 1) == x.block(0)(1, 1));
  CHECK(std::abs(ex.block(0)(0, 1)) < 1e-14);
  // idempotent and trace preserving on the partition of unity
  CHECK((conditional_expectation(ex, {e1, e2}) - ex).frobenius() < 1e-12);
  CHECK(std::abs(trace(ex) - trace(x)) < 1e-12);

  CHECK_THROWS(conditional_expectation(x, {e1, e1}));  // overlapping
  Element bad(alg);
  bad.block(0)(0, 0) = 0.5;  // not a projection
  CHECK_THROWS(conditional_expectation(x, {bad}));
  CHECK_THROWS(conditional_expectation(x, {Element(alg)}));  // trace zero
}

TEST_CASE("element arithmetic checks algebras") {
  auto a1 = make_algebra({{2, 1.0}});
  auto a2 = make_algebra({{3, 1.0}});
  CHECK_THROWS(Element::identity(a1) + Element::identity(a2));
  CHECK_THROWS(Element::identity(a1) * Element::identity(a2));
}
