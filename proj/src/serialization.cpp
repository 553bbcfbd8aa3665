#include "nclp/serialization.hpp"

#include <cstdio>
#include <stdexcept>

namespace nclp {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

}  // namespace

AlgebraPtr parse_algebra(const json& j) {
  if (!j.is_object() || !j.contains("blocks")) bad("algebra needs a blocks array");
  std::vector<Block> blocks;
  for (const auto& b : j.at("blocks"))
    blocks.push_back({b.at("dim").get<Eigen::Index>(), b.at("weight").get<double>()});
  return make_algebra(std::move(blocks));
}

Element parse_element(const json& j, const AlgebraPtr& alg) {
  if (!j.is_array() || j.size() != alg->num_blocks())
    bad("element must have one entry per block");
  Element x(alg);
  for (std::size_t k = 0; k < alg->num_blocks(); ++k) {
    const auto d = alg->blocks()[k].dim;
    const auto& blk = j.at(k);
    if (!blk.is_array() || blk.size() != static_cast<std::size_t>(d * d))
      bad("element block needs dim^2 row-major entries");
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto& pair = blk.at(static_cast<std::size_t>(i * d + c));
        x.block(k)(i, c) = cplx(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
  }
  return x;
}

StepFunction parse_step_function(const json& j) {
  if (!j.is_object() || !j.contains("atoms")) bad("step function needs atoms");
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms"))
    atoms.push_back({cplx(a.at("re").get<double>(), a.at("im").get<double>()),
                     a.at("measure").get<double>()});
  return StepFunction(std::move(atoms));
}

ScalarFunction parse_scalar_function(const json& j) {
  if (j.is_string()) {
    const std::string n = j.get<std::string>();
    if (n == "identity") return ScalarFunction::identity();
    if (n == "pos_part") return ScalarFunction::pos_part();
    if (n == "neg_part") return ScalarFunction::neg_part();
    bad("unknown scalar function " + n);
  }
  if (j.is_object()) {
    const std::string n = j.at("name").get<std::string>();
    if (n == "const") return ScalarFunction::constant(j.at("c").get<double>());
    if (n == "clip")
      return ScalarFunction::clip(j.at("a").get<double>(), j.at("b").get<double>());
    bad("unknown scalar function " + n);
  }
  bad("scalar function must be a name or an object");
}

NCCentralizer parse_centralizer(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double p = j.at("p").get<double>();
  if (kind == "omega_p") return NCCentralizer::omega(p);
  if (kind == "lipschitz")
    return NCCentralizer::lipschitz(p, parse_scalar_function(j.at("phi")));
  if (kind == "phi_plus") return NCCentralizer::phi_plus(p);
  if (kind == "phi_minus") return NCCentralizer::phi_minus(p);
  if (kind == "lifted")
    return NCCentralizer::lifted(p, CommCentralizer::kalton_peck(p));
  bad("unknown centralizer kind " + kind);
}

StripFunction parse_strip_function(const json& j, const AlgebraPtr& alg) {
  StripFunction F;
  F.lambda = j.at("lambda").get<double>();
  if (F.lambda < 0.0) bad("strip function lambda must be >= 0");
  for (const auto& t : j.at("terms"))
    F.terms.push_back(
        {t.at("rate").get<double>(), parse_element(t.at("coefficient"), alg)});
  return F;
}

json element_to_json(const Element& x) {
  json j = json::array();
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    json blk = json::array();
    for (Eigen::Index i = 0; i < x.block(k).rows(); ++i)
      for (Eigen::Index c = 0; c < x.block(k).cols(); ++c)
        blk.push_back({x.block(k)(i, c).real(), x.block(k)(i, c).imag()});
    j.push_back(std::move(blk));
  }
  return j;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace nclp
