#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace nclp {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

struct Block {
  Eigen::Index dim;
  double weight;
};

/// Finite direct sum of complex matrix blocks with strictly positive block
/// weights. The trace of an element is the weighted sum of its block traces,
/// so every weight > 0 makes the trace faithful.
class Algebra {
 public:
  explicit Algebra(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  Eigen::Index total_dim() const { return total_dim_; }

  /// tau(1) = sum of dim_k * weight_k.
  double total_trace() const { return total_trace_; }

  bool operator==(const Algebra& other) const;

 private:
  std::vector<Block> blocks_;
  Eigen::Index total_dim_ = 0;
  double total_trace_ = 0.0;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr make_algebra(std::vector<Block> blocks);

/// n one-dimensional blocks carrying the given weights.
AlgebraPtr make_diagonal_algebra(const std::vector<double>& weights);

/// Block-diagonal complex matrix living in one Algebra. Immutable by
/// convention after construction; all operations return new values.
class Element {
 public:
  explicit Element(AlgebraPtr alg);  // zero element
  Element(AlgebraPtr alg, std::vector<Mat> data);

  static Element identity(const AlgebraPtr& alg);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t num_blocks() const { return data_.size(); }
  const Mat& block(std::size_t k) const { return data_[k]; }
  Mat& block(std::size_t k) { return data_[k]; }

  Element adjoint() const;
  bool is_hermitian(double rel_tol = 1e-9) const;
  bool is_zero(double tol = 0.0) const;

  /// Unweighted Frobenius norm over all blocks (used for tolerances only).
  double frobenius() const;
  /// Largest entry modulus over all blocks.
  double max_abs() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(cplx s);

 private:
  AlgebraPtr alg_;
  std::vector<Mat> data_;
};

bool same_algebra(const Element& a, const Element& b);

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Element& a, const Element& b);
Element operator*(cplx s, Element a);
Element operator*(Element a, cplx s);

cplx trace(const Element& x);

}  // namespace nclp
