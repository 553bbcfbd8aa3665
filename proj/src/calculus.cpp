#include "nclp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nclp {

namespace {

struct EigPair {
  double value;
  std::size_t block;
  Eigen::VectorXcd vec;
};

// Per-block Hermitian eigendecomposition, flattened and sorted decreasing.
std::vector<EigPair> hermitian_eigs(const Element& x) {
  std::vector<EigPair> eigs;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    Mat h = 0.5 * (x.block(k) + x.block(k).adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed");
    for (Eigen::Index j = 0; j < h.rows(); ++j)
      eigs.push_back({es.eigenvalues()(j), k, es.eigenvectors().col(j)});
  }
  std::sort(eigs.begin(), eigs.end(),
            [](const EigPair& a, const EigPair& b) { return a.value > b.value; });
  return eigs;
}

}  // namespace

SpectralData spectral(const Element& x, double rel_tol) {
  if (!x.is_hermitian())
    throw std::invalid_argument("spectral: input is not Hermitian");
  auto eigs = hermitian_eigs(x);

  double max_abs = 0.0;
  for (const auto& e : eigs) max_abs = std::max(max_abs, std::abs(e.value));
  const double tol = rel_tol * max_abs;

  SpectralData sd;
  sd.tol = tol;
  const auto& blocks = x.algebra()->blocks();

  std::size_t i = 0;
  while (i < eigs.size()) {
    std::size_t j = i + 1;
    // chain-merge eigenvalues closer than tol to their predecessor
    while (j < eigs.size() && eigs[j - 1].value - eigs[j].value <= tol) ++j;
    Element proj(x.algebra());
    double wsum = 0.0, vsum = 0.0;
    for (std::size_t m = i; m < j; ++m) {
      proj.block(eigs[m].block) += eigs[m].vec * eigs[m].vec.adjoint();
      const double w = blocks[eigs[m].block].weight;
      wsum += w;
      vsum += w * eigs[m].value;
    }
    sd.projections.push_back(std::move(proj));
    sd.values.push_back(vsum / wsum);
    i = j;
  }
  return sd;
}

Element func_calc(const Element& x, const std::function<cplx(double)>& f) {
  SpectralData sd = spectral(x);
  Element r(x.algebra());
  for (std::size_t i = 0; i < sd.values.size(); ++i)
    r += f(sd.values[i]) * sd.projections[i];
  return r;
}

PolarDecomposition polar(const Element& x) {
  Element u(x.algebra());
  Element m(x.algebra());

  double sigma_max = 0.0;
  std::vector<Eigen::JacobiSVD<Mat>> svds;
  svds.reserve(x.num_blocks());
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    svds.emplace_back(x.block(k), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svds.back().singularValues().size() > 0)
      sigma_max = std::max(sigma_max, svds.back().singularValues()(0));
  }
  const double cut = 1e-13 * sigma_max;

  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    const auto& svd = svds[k];
    const auto& s = svd.singularValues();
    Mat keep = Mat::Zero(s.size(), s.size());
    for (Eigen::Index j = 0; j < s.size(); ++j)
      if (s(j) > cut) keep(j, j) = 1.0;
    u.block(k) = svd.matrixU() * keep * svd.matrixV().adjoint();
    m.block(k) = svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint();
  }
  return {std::move(u), std::move(m)};
}

Element abs_element(const Element& x) { return polar(x).modulus; }

double lp_norm(const Element& x, double p) {
  if (std::isinf(p)) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.num_blocks(); ++k) {
      Eigen::JacobiSVD<Mat> svd(x.block(k));
      if (svd.singularValues().size() > 0)
        s = std::max(s, svd.singularValues()(0));
    }
    return s;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    Eigen::JacobiSVD<Mat> svd(x.block(k));
    const double w = x.algebra()->blocks()[k].weight;
    const auto& s = svd.singularValues();
    for (Eigen::Index j = 0; j < s.size(); ++j)
      acc += w * std::pow(s(j), p);
  }
  return std::pow(acc, 1.0 / p);
}

Element element_pow(const Element& x, cplx z) {
  return func_calc(x, [z](double t) -> cplx {
    if (t <= 0.0) return 0.0;
    return std::exp(z * std::log(t));
  });
}

double MuFunction::value_at(double t) const {
  double pos = 0.0;
  for (const auto& s : steps) {
    if (t < pos + s.width) return s.value;
    pos += s.width;
  }
  return 0.0;
}

double MuFunction::integral_norm(double p) const {
  double acc = 0.0;
  for (const auto& s : steps) acc += std::pow(s.value, p) * s.width;
  return std::pow(acc, 1.0 / p);
}

MuFunction mu(const Element& x) {
  // singular values with their tau-weights, decreasing
  std::vector<std::pair<double, double>> sv;  // (sigma, weight)
  double sigma_max = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    Eigen::JacobiSVD<Mat> svd(x.block(k));
    const double w = x.algebra()->blocks()[k].weight;
    const auto& s = svd.singularValues();
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      sv.emplace_back(s(j), w);
      sigma_max = std::max(sigma_max, s(j));
    }
  }
  std::sort(sv.begin(), sv.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const double tol = kSpectralGroupTol * sigma_max;
  MuFunction f;
  std::size_t i = 0;
  while (i < sv.size()) {
    std::size_t j = i + 1;
    while (j < sv.size() && sv[j - 1].first - sv[j].first <= tol) ++j;
    double wsum = 0.0, vsum = 0.0;
    for (std::size_t m = i; m < j; ++m) {
      wsum += sv[m].second;
      vsum += sv[m].second * sv[m].first;
    }
    const double value = vsum / wsum;
    if (value > 0.0) f.steps.push_back({value, wsum});
    i = j;
  }
  return f;
}

Element conditional_expectation(const Element& x,
                                const std::vector<Element>& partition) {
  const double tol = 1e-8;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const Element& e = partition[i];
    if (!same_algebra(x, e)) throw std::invalid_argument("algebra mismatch");
    if (!e.is_hermitian())
      throw std::invalid_argument("conditional_expectation: non-Hermitian projection");
    if ((e * e - e).frobenius() > tol * (1.0 + e.frobenius()))
      throw std::invalid_argument("conditional_expectation: not a projection");
    const double te = trace(e).real();
    if (!(te > 0.0))
      throw std::invalid_argument("conditional_expectation: trace-zero projection");
    for (std::size_t j = 0; j < i; ++j)
      if ((e * partition[j]).frobenius() > tol)
        throw std::invalid_argument("conditional_expectation: overlapping projections");
  }
  Element r(x.algebra());
  for (const Element& e : partition) {
    const cplx c = trace(x * e) / trace(e).real();
    r += c * e;
  }
  return r;
}

}  // namespace nclp
