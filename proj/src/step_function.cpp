#include "nclp/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nclp {

StepFunction::StepFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_)
    if (!(a.measure > 0.0))
      throw std::invalid_argument("StepFunction: atom measure must be > 0");
}

double StepFunction::norm(double p) const {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& a : atoms_) m = std::max(m, std::abs(a.value));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("StepFunction::norm: p < 1");
  double acc = 0.0;
  for (const auto& a : atoms_) acc += std::pow(std::abs(a.value), p) * a.measure;
  return std::pow(acc, 1.0 / p);
}

double StepFunction::total_measure() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.measure;
  return m;
}

StepFunction StepFunction::map(const std::function<cplx(cplx)>& f) const {
  std::vector<Atom> out = atoms_;
  for (auto& a : out) a.value = f(a.value);
  return StepFunction(std::move(out));
}

namespace {

void check_layout(const StepFunction& f, const StepFunction& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("StepFunction: layout mismatch");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.atoms()[i].measure != g.atoms()[i].measure)
      throw std::invalid_argument("StepFunction: layout mismatch");
}

}  // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  check_layout(f, g);
  std::vector<Atom> out = f.atoms();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value += g.atoms()[i].value;
  return StepFunction(std::move(out));
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  check_layout(f, g);
  std::vector<Atom> out = f.atoms();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value -= g.atoms()[i].value;
  return StepFunction(std::move(out));
}

StepFunction operator*(cplx s, StepFunction f) {
  return f.map([s](cplx v) { return s * v; });
}

std::vector<RankSegment> rank_function(const StepFunction& f) {
  std::vector<RankSegment> segs;
  segs.reserve(f.size());
  double start = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double vi = std::abs(f.atoms()[i].value);
    double offset = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double vj = std::abs(f.atoms()[j].value);
      if (vj > vi || (j < i && vj == vi)) offset += f.atoms()[j].measure;
    }
    segs.push_back({start, offset, f.atoms()[i].measure, f.atoms()[i].value});
    start += f.atoms()[i].measure;
  }
  return segs;
}

double rank_at(const StepFunction& f, double t) {
  const auto segs = rank_function(f);
  for (const auto& s : segs)
    if (t >= s.start && t < s.start + s.measure) return s.offset + (t - s.start);
  throw std::invalid_argument("rank_at: t outside the support");
}

StepFunction rearrangement(const StepFunction& f) {
  std::vector<Atom> abs_atoms;
  abs_atoms.reserve(f.size());
  for (const auto& a : f.atoms()) abs_atoms.push_back({std::abs(a.value), a.measure});
  std::sort(abs_atoms.begin(), abs_atoms.end(), [](const Atom& a, const Atom& b) {
    return a.value.real() > b.value.real();
  });
  std::vector<Atom> merged;
  for (const auto& a : abs_atoms) {
    if (!merged.empty() && merged.back().value == a.value)
      merged.back().measure += a.measure;
    else
      merged.push_back(a);
  }
  return StepFunction(std::move(merged));
}

cplx integrate(const std::function<cplx(double)>& expr, double lo, double hi) {
  // 16-point Gauss-Legendre nodes/weights on [-1, 1]
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589,
                               0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236,
                               0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  auto gauss = [&](double a, double b) -> cplx {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < 8; ++i)
      acc += gw[i] * (expr(c + h * gx[i]) + expr(c - h * gx[i]));
    return h * acc;
  };
  if (!(hi > lo)) return 0.0;
  const double len = hi - lo;
  // dyadic refinement toward lo handles log-type endpoint singularities
  cplx acc = 0.0;
  double right = hi;
  for (int k = 0; k < 60; ++k) {
    const double left = lo + len * std::ldexp(1.0, -(k + 1));
    acc += gauss(left, right);
    right = left;
  }
  acc += (right - lo) * expr(0.5 * (lo + right));
  return acc;
}

StepFunction laziness_project(const std::function<cplx(double)>& expr,
                              const StepFunction& f) {
  const auto segs = rank_function(f);
  // pool atom indices by exact |value|
  std::map<double, std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < f.size(); ++i)
    pools[std::abs(f.atoms()[i].value)].push_back(i);

  std::vector<Atom> out = f.atoms();
  for (const auto& [absval, idx] : pools) {
    cplx total = 0.0;
    double measure = 0.0;
    for (std::size_t i : idx) {
      total += integrate(expr, segs[i].start, segs[i].start + segs[i].measure);
      measure += segs[i].measure;
    }
    const cplx avg = total / measure;
    for (std::size_t i : idx) out[i].value = avg;
  }
  return StepFunction(std::move(out));
}

cplx kp_two_variable_pointwise(const StepFunction& f, double p,
                               const std::function<cplx(double, double)>& phi,
                               double t) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("kp_two_variable: p must be in (1, inf)");
  const double n = f.norm(p);
  const auto segs = rank_function(f);
  for (const auto& s : segs) {
    if (t >= s.start && t < s.start + s.measure) {
      if (s.value == cplx(0.0)) return 0.0;
      const double a = std::log(std::abs(s.value) / n);
      const double r = s.offset + (t - s.start);
      return s.value * phi(a, std::log(r));
    }
  }
  return 0.0;
}

StepFunction kp_two_variable(const StepFunction& f, double p,
                             const std::function<cplx(double, double)>& phi,
                             bool lazy) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("kp_two_variable: p must be in (1, inf)");
  const double n = f.norm(p);
  if (n == 0.0) return f;  // homogeneity forces Phi(0) = 0
  if (!lazy)
    throw std::invalid_argument(
        "kp_two_variable: non-lazy output is exposed via kp_two_variable_pointwise");

  const auto segs = rank_function(f);
  auto scalar_expr = [&](double t) -> cplx {
    for (const auto& s : segs) {
      if (t >= s.start && t < s.start + s.measure) {
        if (s.value == cplx(0.0)) return 0.0;
        const double a = std::log(std::abs(s.value) / n);
        return phi(a, std::log(s.offset + (t - s.start)));
      }
    }
    return 0.0;
  };
  StepFunction projected = laziness_project(scalar_expr, f);
  std::vector<Atom> out = f.atoms();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].value = f.atoms()[i].value * projected.atoms()[i].value;
  return StepFunction(std::move(out));
}

CommCentralizer CommCentralizer::kalton_peck(double p) {
  CommCentralizer c;
  c.kind_ = CommKind::kalton_peck;
  c.p_ = p;
  c.lazy_ = true;
  return c;
}

CommCentralizer CommCentralizer::phi_plus(double p) {
  CommCentralizer c;
  c.kind_ = CommKind::phi_plus;
  c.p_ = p;
  c.lazy_ = true;
  return c;
}

CommCentralizer CommCentralizer::phi_minus(double p) {
  CommCentralizer c;
  c.kind_ = CommKind::phi_minus;
  c.p_ = p;
  c.lazy_ = true;
  return c;
}

CommCentralizer CommCentralizer::two_variable(
    double p, std::function<cplx(double, double)> phi) {
  CommCentralizer c;
  c.kind_ = CommKind::two_variable;
  c.p_ = p;
  c.lazy_ = true;  // apply() yields the level-set projection
  c.phi2_ = std::move(phi);
  return c;
}

CommCentralizer CommCentralizer::custom(
    double p, std::function<StepFunction(const StepFunction&)> map, bool lazy) {
  CommCentralizer c;
  c.kind_ = CommKind::custom;
  c.p_ = p;
  c.lazy_ = lazy;
  c.custom_ = std::move(map);
  return c;
}

StepFunction CommCentralizer::apply(const StepFunction& f) const {
  switch (kind_) {
    case CommKind::kalton_peck: {
      const double n = f.norm(p_);
      if (n == 0.0) return f;
      const double p = p_;
      return f.map([n, p](cplx v) -> cplx {
        if (v == cplx(0.0)) return 0.0;
        return v * p * std::log(std::abs(v) / n);
      });
    }
    case CommKind::phi_plus:
    case CommKind::phi_minus: {
      const double n = f.norm(p_);
      if (n == 0.0) return f;
      const bool plus = (kind_ == CommKind::phi_plus);
      return f.map([n, plus](cplx v) -> cplx {
        if (v == cplx(0.0)) return 0.0;
        const double t = std::log(std::abs(v) / n);
        return v * (plus ? std::max(0.0, t) : std::min(0.0, t));
      });
    }
    case CommKind::two_variable:
      return kp_two_variable(f, p_, phi2_, true);
    case CommKind::custom:
      return custom_(f);
  }
  throw std::logic_error("unreachable");
}

double symmetry_defect(const CommCentralizer& phi, const StepFunction& f,
                       const std::vector<std::size_t>& perm) {
  if (perm.size() != f.size())
    throw std::invalid_argument("symmetry_defect: permutation size mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || seen[perm[i]])
      throw std::invalid_argument("symmetry_defect: not a permutation");
    seen[perm[i]] = true;
    if (f.atoms()[perm[i]].measure != f.atoms()[i].measure)
      throw std::invalid_argument(
          "symmetry_defect: permutation mixes atoms of unequal measure");
  }
  std::vector<Atom> permuted = f.atoms();
  for (std::size_t i = 0; i < perm.size(); ++i)
    permuted[i].value = f.atoms()[perm[i]].value;

  const StepFunction pf = phi.apply(StepFunction(permuted));
  const StepFunction fp = phi.apply(f);
  std::vector<Atom> fp_perm = f.atoms();
  for (std::size_t i = 0; i < perm.size(); ++i)
    fp_perm[i].value = fp.atoms()[perm[i]].value;

  const double fn = f.norm(phi.p());
  if (fn == 0.0) return 0.0;
  return (pf - StepFunction(fp_perm)).norm(phi.p()) / fn;
}

std::pair<CommCentralizer, CommCentralizer> real_decomposition(
    const CommCentralizer& phi) {
  auto re = [](const StepFunction& f) {
    return f.map([](cplx v) { return cplx(v.real(), 0.0); });
  };
  auto im = [](const StepFunction& f) {
    return f.map([](cplx v) { return cplx(v.imag(), 0.0); });
  };
  CommCentralizer phi1 = CommCentralizer::custom(
      phi.p(),
      [phi, re, im](const StepFunction& f) {
        return re(phi.apply(re(f))) +
               cplx(0.0, 1.0) * re(phi.apply(im(f)));
      },
      phi.lazy());
  CommCentralizer phi2 = CommCentralizer::custom(
      phi.p(),
      [phi, re, im](const StepFunction& f) {
        return im(phi.apply(re(f))) -
               cplx(0.0, 1.0) * im(phi.apply(im(f)));
      },
      phi.lazy());
  return {phi1, phi2};
}

}  // namespace nclp
