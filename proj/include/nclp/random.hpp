#pragma once

#include <random>

#include "nclp/algebra.hpp"

namespace nclp {

// Seeded samplers over an Algebra. Each trial of a multi-trial estimate
// should use substream(master_seed, trial_index) so the result does not
// depend on scheduling.

inline std::mt19937_64 substream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{master_seed, std::uint64_t(0x9e3779b97f4a7c15ull) ^ index,
                    index};
  return std::mt19937_64(seq);
}

// Ginibre-style matrix: iid standard complex Gaussian entries.
inline Element random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Element x(alg);
  for (std::size_t k = 0; k < x.num_blocks(); ++k)
    for (Eigen::Index i = 0; i < x.block(k).rows(); ++i)
      for (Eigen::Index j = 0; j < x.block(k).cols(); ++j)
        x.block(k)(i, j) = cplx(g(rng), g(rng));
  return x;
}

inline Element random_hermitian(const AlgebraPtr& alg, std::mt19937_64& rng) {
  Element x = random_element(alg, rng);
  Element r(alg);
  for (std::size_t k = 0; k < x.num_blocks(); ++k)
    r.block(k) = 0.5 * (x.block(k) + x.block(k).adjoint());
  return r;
}

// Positive definite: g*g + eps to keep eigenvalues off zero.
inline Element random_positive(const AlgebraPtr& alg, std::mt19937_64& rng,
                               double eps = 1e-3) {
  Element x = random_element(alg, rng);
  Element r(alg);
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    const auto d = x.block(k).rows();
    r.block(k) = x.block(k).adjoint() * x.block(k) / static_cast<double>(d) +
                 eps * Mat::Identity(d, d);
  }
  return r;
}

// Haar-ish unitary via QR of a Ginibre matrix with phase fix.
inline Element random_unitary(const AlgebraPtr& alg, std::mt19937_64& rng) {
  Element x = random_element(alg, rng);
  Element u(alg);
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    Eigen::HouseholderQR<Mat> qr(x.block(k));
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      const cplx d = r(j, j);
      if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    u.block(k) = q;
  }
  return u;
}

// Normal element: u * diag-in-basis via random Hermitian pair trick —
// here simply a random unitary conjugation of a random diagonal.
inline Element random_normal(const AlgebraPtr& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Element u = random_unitary(alg, rng);
  Element x(alg);
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    const auto d = x.block(k).rows();
    Mat diag = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) diag(i, i) = cplx(g(rng), g(rng));
    x.block(k) = u.block(k) * diag * u.block(k).adjoint();
  }
  return x;
}

}  // namespace nclp
