#include "nclp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nclp/random.hpp"

namespace nclp {

bool Report::passed() const {
  for (const auto& [name, ok] : assertions)
    if (!ok) return false;
  return true;
}

namespace {

double get_num(const json& cfg, const char* key, double fallback) {
  return cfg.contains(key) ? cfg.at(key).get<double>() : fallback;
}

int get_int(const json& cfg, const char* key, int fallback) {
  return cfg.contains(key) ? cfg.at(key).get<int>() : fallback;
}

std::vector<double> get_list(const json& cfg, const char* key,
                             std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  return cfg.at(key).get<std::vector<double>>();
}

AlgebraPtr single_block(Eigen::Index dim, double weight = 1.0) {
  return make_algebra({{dim, weight}});
}

void run_norms(const json& cfg, std::uint64_t seed, Report& r) {
  const int trials = get_int(cfg, "trials", 100);
  const auto ps = get_list(cfg, "p_values", {1.5, 2.0, 3.0});
  r.columns = {"trial", "p", "lp_norm", "mu_norm", "abs_err"};
  bool ok = true;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> wdist(0.25, 4.0);
    const AlgebraPtr alg = make_algebra({{2, wdist(rng)}, {3, wdist(rng)}});
    const Element x = random_element(alg, rng);
    const MuFunction m = mu(x);
    for (double p : ps) {
      const double a = lp_norm(x, p), b = m.integral_norm(p);
      const double err = std::abs(a - b);
      if (err > 1e-10 * (1.0 + a)) ok = false;
      r.rows.push_back({fmt17(i), fmt17(p), fmt17(a), fmt17(b), fmt17(err)});
    }
  }
  r.assertions.emplace_back("mu integral norm matches the weighted Schatten norm to 1e-10", ok);
}

void run_centralizer_constants(const json& cfg, std::uint64_t seed, Report& r) {
  const int trials = get_int(cfg, "trials", 200);
  const AlgebraPtr alg = cfg.contains("algebra") ? parse_algebra(cfg.at("algebra"))
                                                 : single_block(2);
  const NCCentralizer omega =
      cfg.contains("centralizer")
          ? parse_centralizer(cfg.at("centralizer"))
          : NCCentralizer::omega(get_num(cfg, "p", 2.0));
  const double q_hat = estimate_Q(omega, alg, seed, trials);
  const double c_hat = estimate_C(omega, alg, seed, trials);
  r.columns = {"p", "trials", "Q_hat", "C_hat"};
  r.rows.push_back({fmt17(omega.p()), fmt17(trials), fmt17(q_hat), fmt17(c_hat)});
  r.assertions.emplace_back(
      "estimated constants are finite and nonnegative",
      q_hat >= 0.0 && c_hat >= 0.0 && std::isfinite(q_hat) && std::isfinite(c_hat));
}

void run_nontriviality(const json& cfg, std::uint64_t seed, Report& r) {
  const double p = get_num(cfg, "p", 2.0);
  std::vector<double> ns = get_list(cfg, "n_values", {2, 4, 8, 16, 32, 64, 128, 256});
  r.columns = {"rule", "n", "ratio", "log_n", "abs_err"};
  bool ok = true;
  const char* rules[] = {"uniform", "geometric", "random"};
  for (int rule = 0; rule < 3; ++rule) {
    for (double nd : ns) {
      const int n = static_cast<int>(nd);
      std::vector<double> w(n);
      auto rng = substream(seed, 1000u * rule + static_cast<std::uint64_t>(n));
      std::uniform_real_distribution<double> dist(0.1, 10.0);
      for (int i = 0; i < n; ++i)
        w[i] = rule == 0 ? 1.0 : rule == 1 ? std::ldexp(1.0, i % 40) : dist(rng);
      const auto wit = nontriviality_witness(w, p);
      const double err = std::abs(wit.ratio - std::log(nd));
      if (err > 1e-9) ok = false;
      r.rows.push_back({rules[rule], fmt17(nd), fmt17(wit.ratio),
                        fmt17(std::log(nd)), fmt17(err)});
    }
  }
  r.assertions.emplace_back("witness ratio equals log n to 1e-9", ok);
}

void run_duality(const json& cfg, std::uint64_t seed, Report& r) {
  const double p = get_num(cfg, "p", 2.0);
  const double q = p / (p - 1.0);
  const int trials = get_int(cfg, "trials", 1000);
  r.columns = {"dim", "trials", "sup_abs_pairing"};
  bool ok = true;
  for (Eigen::Index dim : {2, 4, 8}) {
    const AlgebraPtr alg = single_block(dim);
    const NCCentralizer oq = NCCentralizer::omega(q), op = NCCentralizer::omega(p);
    double sup = 0.0;
    for (int i = 0; i < trials; ++i) {
      auto rng = substream(seed, static_cast<std::uint64_t>(dim) * 100000u + i);
      TwistedPair xy{random_element(alg, rng), random_element(alg, rng), oq, q};
      TwistedPair vw{random_element(alg, rng), random_element(alg, rng), op, p};
      const double nx = quasi_norm(xy), nv = quasi_norm(vw);
      if (nx == 0.0 || nv == 0.0) continue;
      xy.g *= cplx(1.0 / nx, 0.0);
      xy.f *= cplx(1.0 / nx, 0.0);
      vw.g *= cplx(1.0 / nv, 0.0);
      vw.f *= cplx(1.0 / nv, 0.0);
      const double val = std::abs(duality_pairing(xy, vw));
      if (!std::isfinite(val)) ok = false;
      sup = std::max(sup, val);
    }
    r.rows.push_back({fmt17(double(dim)), fmt17(trials), fmt17(sup)});
  }
  r.assertions.emplace_back("pairing values all finite", ok);
}

void run_inequality_grid(const json& cfg, std::uint64_t seed, Report& r) {
  (void)seed;
  const auto ps = get_list(cfg, "p_values", {1.25, 1.5, 2.0, 3.0});
  GridSpec grid;
  grid.points_per_axis = get_int(cfg, "points_per_axis", 1000);
  grid.lo = get_num(cfg, "grid_lo", 1e-6);
  grid.hi = get_num(cfg, "grid_hi", 1e6);
  r.columns = {"p", "grid_points", "max_ratio"};
  bool ok = true;
  for (double p : ps) {
    const double m = elementary_inequality_check(p, grid);
    if (!(m <= 1.0)) ok = false;
    r.rows.push_back({fmt17(p),
                      fmt17(double(grid.points_per_axis) * grid.points_per_axis),
                      fmt17(m)});
  }
  r.assertions.emplace_back("elementary inequality ratio <= 1 on the whole grid", ok);
}

void run_kosaki(const json& cfg, std::uint64_t seed, Report& r) {
  const double p = get_num(cfg, "p", 2.0);
  const int trials = get_int(cfg, "trials", 100);
  r.columns = {"trial", "kosaki_norm", "weighted_formula", "rel_err"};
  bool ok = true;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> tw(0.25, 4.0), dw(0.1, 2.0);
    std::normal_distribution<double> g(0.0, 1.0);
    const int n = 4;
    std::vector<double> tau(n);
    for (auto& t : tau) t = tw(rng);
    const AlgebraPtr alg = make_diagonal_algebra(tau);
    Element a(alg), d(alg);
    double mass = 0.0;
    for (int k = 0; k < n; ++k) {
      a.block(k)(0, 0) = cplx(g(rng), g(rng));
      d.block(k)(0, 0) = dw(rng);
      mass += tau[k] * d.block(k)(0, 0).real();
    }
    const StateDensity sd(d, mass);
    const double kn = kosaki_norm(a, sd, p, Side::left);
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += tau[k] * d.block(k)(0, 0).real() *
             std::pow(std::abs(a.block(k)(0, 0)), p);
    const double formula = std::pow(acc, 1.0 / p);
    const double err = std::abs(kn - formula) / formula;
    if (err > 1e-10) ok = false;
    r.rows.push_back({fmt17(i), fmt17(kn), fmt17(formula), fmt17(err)});
  }
  r.assertions.emplace_back(
      "diagonal Kosaki norm equals the weighted l^p formula to 1e-10", ok);
}

void run_change_of_state(const json& cfg, std::uint64_t seed, Report& r) {
  const int trials = get_int(cfg, "trials", 100);
  const auto ps = get_list(cfg, "p_values", {1.5, 2.0, 3.0});
  const AlgebraPtr alg = single_block(4);
  r.columns = {"trial", "p", "norm_before", "norm_after", "abs_err"};
  bool ok = true, ok_id = true;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    Element d0 = random_positive(alg, rng);
    Element d1 = random_positive(alg, rng);
    d0 *= cplx(1.0 / trace(d0).real(), 0.0);
    d1 *= cplx(1.0 / trace(d1).real(), 0.0);
    const StateDensity s0(d0, 1.0), s1(d1, 1.0);
    const Element a = random_element(alg, rng);
    for (double p : ps) {
      const double n0 = kosaki_norm(a, s0, p, Side::left);
      const Element moved = change_of_state(a, s0, s1, p);
      const double n1 = kosaki_norm(moved, s1, p, Side::left);
      const double err = std::abs(n1 - n0);
      if (err > 1e-8 * n0) ok = false;
      r.rows.push_back({fmt17(i), fmt17(p), fmt17(n0), fmt17(n1), fmt17(err)});
      if ((change_of_state(a, s0, s0, p) - a).frobenius() != 0.0) ok_id = false;
    }
  }
  r.assertions.emplace_back("change of state preserves the Kosaki norm to 1e-8", ok);
  r.assertions.emplace_back("equal states give the identity map exactly", ok_id);
}

void run_derivative_bound(const json& cfg, std::uint64_t seed, Report& r) {
  const int trials = get_int(cfg, "trials", 20);
  const auto thetas = get_list(cfg, "thetas", {1.0 / 3.0, 0.5, 2.0 / 3.0});
  const double t_max = get_num(cfg, "t_max", 10.0);
  const double t_step = get_num(cfg, "t_step", 1.0 / 16.0);
  const AlgebraPtr alg = single_block(2);

  auto drng = substream(seed, 0xD);
  Element d = random_positive(alg, drng);
  d *= cplx(1.0 / trace(d).real(), 0.0);
  const InterpolationCouple couples[2] = {
      InterpolationCouple::make_M_L1(),
      InterpolationCouple::make_kosaki_left(StateDensity(d, 1.0))};
  const char* names[2] = {"M_L1", "kosaki_left"};

  r.columns = {"couple", "theta", "trial", "lhs", "rhs", "ratio"};
  bool ok = true;
  for (int c = 0; c < 2; ++c) {
    for (double theta : thetas) {
      for (int i = 0; i < trials; ++i) {
        auto rng = substream(seed, 7919u * c + 101u * static_cast<std::uint64_t>(1000 * theta) + i);
        std::uniform_real_distribution<double> lam(0.75, 1.5), rate(-1.5, 1.5);
        StripFunction F;
        F.lambda = lam(rng);
        Element comp(alg);
        for (int t = 0; t < 3; ++t) {
          const double rt = rate(rng);
          const Element a = random_element(alg, rng);
          F.terms.push_back({rt, a});
          comp -= std::exp(rt * theta) * a;
        }
        F.terms.push_back({0.0, comp});  // forces F(theta) = 0
        const auto [lhs, rhs] =
            derivative_bound_check(F, couples[c], theta, t_max, t_step);
        const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
        if (lhs > rhs * (1.0 + 1e-3)) ok = false;
        r.rows.push_back({names[c], fmt17(theta), fmt17(i), fmt17(lhs),
                          fmt17(rhs), fmt17(ratio)});
      }
    }
  }
  r.assertions.emplace_back(
      "derivative norm bounded by pi/(2 sin(pi theta)) times the boundary norm", ok);
}

void run_lift_consistency(const json& cfg, std::uint64_t seed, Report& r) {
  const int trials = get_int(cfg, "trials", 100);
  const auto ps = get_list(cfg, "p_values", {1.5, 2.0, 3.0});
  r.columns = {"trial", "dim", "p", "abs_err", "norm"};
  bool ok = true;
  for (int i = 0; i < trials; ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    const Eigen::Index dim = 2 + (i % 7);
    const AlgebraPtr alg = single_block(dim);
    const Element x = random_normal(alg, rng);
    for (double p : ps) {
      const Element direct = omega_p(x, p);
      const Element lifted =
          lift_centralizer(CommCentralizer::kalton_peck(p), x, p);
      const double nx = lp_norm(x, p);
      const double err = lp_norm(direct - lifted, p);
      if (err > 1e-10 * nx) ok = false;
      r.rows.push_back(
          {fmt17(i), fmt17(double(dim)), fmt17(p), fmt17(err), fmt17(nx)});
    }
  }
  r.assertions.emplace_back(
      "lifted commutative Kalton-Peck map equals the direct one to 1e-10", ok);
}

}  // namespace

Report run_experiment(const json& config) {
  if (!config.is_object()) throw std::invalid_argument("config: not an object");
  if (!config.contains("experiment"))
    throw std::invalid_argument("config: missing experiment name");
  if (!config.contains("seed"))
    throw std::invalid_argument("config: seed is mandatory");
  const std::string name = config.at("experiment").get<std::string>();
  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();

  Report r;
  r.experiment = name;
  r.config_echo = config;
  const auto start = std::chrono::steady_clock::now();

  if (name == "norms")
    run_norms(config, seed, r);
  else if (name == "centralizer-constants")
    run_centralizer_constants(config, seed, r);
  else if (name == "nontriviality")
    run_nontriviality(config, seed, r);
  else if (name == "duality")
    run_duality(config, seed, r);
  else if (name == "inequality-grid")
    run_inequality_grid(config, seed, r);
  else if (name == "kosaki")
    run_kosaki(config, seed, r);
  else if (name == "change-of-state")
    run_change_of_state(config, seed, r);
  else if (name == "derivative-bound")
    run_derivative_bound(config, seed, r);
  else if (name == "lift-consistency")
    run_lift_consistency(config, seed, r);
  else
    throw std::invalid_argument("config: unknown experiment '" + name + "'");

  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

std::string emit_csv(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    out << (i ? "," : "") << r.columns[i];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  out << "\nassertion,passed\n";
  for (const auto& [aname, ok] : r.assertions)
    out << "\"" << aname << "\"," << (ok ? "true" : "false") << "\n";
  return out.str();
}

std::string emit_json(const Report& r, bool include_wall_time) {
  json j;
  j["experiment"] = r.experiment;
  j["config"] = r.config_echo;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  json asserts = json::array();
  for (const auto& [aname, ok] : r.assertions)
    asserts.push_back({{"name", aname}, {"passed", ok}});
  j["assertions"] = asserts;
  j["passed"] = r.passed();
  if (include_wall_time) j["wall_ms"] = r.wall_ms;
  return j.dump(2) + "\n";
}

}  // namespace nclp
