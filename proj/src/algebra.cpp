#include "nclp/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace nclp {

Algebra::Algebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("Algebra: no blocks");
  for (const auto& b : blocks_) {
    if (b.dim < 1) throw std::invalid_argument("Algebra: block dim < 1");
    if (!(b.weight > 0.0))
      throw std::invalid_argument("Algebra: block weight must be > 0");
    total_dim_ += b.dim;
    total_trace_ += static_cast<double>(b.dim) * b.weight;
  }
}

bool Algebra::operator==(const Algebra& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].dim != other.blocks_[k].dim) return false;
    if (blocks_[k].weight != other.blocks_[k].weight) return false;
  }
  return true;
}

AlgebraPtr make_algebra(std::vector<Block> blocks) {
  return std::make_shared<const Algebra>(std::move(blocks));
}

AlgebraPtr make_diagonal_algebra(const std::vector<double>& weights) {
  std::vector<Block> blocks;
  blocks.reserve(weights.size());
  for (double w : weights) blocks.push_back({1, w});
  return make_algebra(std::move(blocks));
}

Element::Element(AlgebraPtr alg) : alg_(std::move(alg)) {
  if (!alg_) throw std::invalid_argument("Element: null algebra");
  data_.reserve(alg_->num_blocks());
  for (const auto& b : alg_->blocks()) data_.push_back(Mat::Zero(b.dim, b.dim));
}

Element::Element(AlgebraPtr alg, std::vector<Mat> data)
    : alg_(std::move(alg)), data_(std::move(data)) {
  if (!alg_) throw std::invalid_argument("Element: null algebra");
  if (data_.size() != alg_->num_blocks())
    throw std::invalid_argument("Element: block count mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    const auto d = alg_->blocks()[k].dim;
    if (data_[k].rows() != d || data_[k].cols() != d)
      throw std::invalid_argument("Element: block dimension mismatch");
  }
}

Element Element::identity(const AlgebraPtr& alg) {
  Element e(alg);
  for (std::size_t k = 0; k < e.num_blocks(); ++k)
    e.block(k).setIdentity();
  return e;
}

Element Element::adjoint() const {
  Element r(alg_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    r.data_[k] = data_[k].adjoint();
  return r;
}

bool Element::is_hermitian(double rel_tol) const {
  double diff = 0.0;
  for (const auto& m : data_) diff += (m - m.adjoint()).norm();
  return diff <= rel_tol * (frobenius() + 1e-300);
}

bool Element::is_zero(double tol) const { return frobenius() <= tol; }

double Element::frobenius() const {
  double s = 0.0;
  for (const auto& m : data_) s += m.squaredNorm();
  return std::sqrt(s);
}

double Element::max_abs() const {
  double m = 0.0;
  for (const auto& b : data_)
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

Element& Element::operator+=(const Element& o) {
  if (!same_algebra(*this, o)) throw std::invalid_argument("algebra mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (!same_algebra(*this, o)) throw std::invalid_argument("algebra mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Element& Element::operator*=(cplx s) {
  for (auto& m : data_) m *= s;
  return *this;
}

bool same_algebra(const Element& a, const Element& b) {
  return a.algebra() == b.algebra() || *a.algebra() == *b.algebra();
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }

Element operator-(const Element& a) {
  Element r = a;
  return r *= cplx(-1.0, 0.0);
}

Element operator*(const Element& a, const Element& b) {
  if (!same_algebra(a, b)) throw std::invalid_argument("algebra mismatch");
  Element r(a.algebra());
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    r.block(k) = a.block(k) * b.block(k);
  return r;
}

Element operator*(cplx s, Element a) { return a *= s; }
Element operator*(Element a, cplx s) { return a *= s; }

cplx trace(const Element& x) {
  cplx t = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k)
    t += x.algebra()->blocks()[k].weight * x.block(k).trace();
  return t;
}

}  // namespace nclp
