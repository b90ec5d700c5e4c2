#include "pdsa/linear_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace pdsa {

LinearOperator LinearOperator::dense(MatrixXd m) {
  LinearOperator op;
  op.kind_ = Kind::Dense;
  op.rows_ = m.rows();
  op.cols_ = m.cols();
  op.mat_ = std::move(m);
  return op;
}

LinearOperator LinearOperator::diagonal(VectorXd d) {
  LinearOperator op;
  op.kind_ = Kind::Diagonal;
  op.rows_ = op.cols_ = d.size();
  op.diag_ = std::move(d);
  return op;
}

LinearOperator LinearOperator::identity(Index n) {
  LinearOperator op;
  op.kind_ = Kind::Identity;
  op.rows_ = op.cols_ = n;
  return op;
}

LinearOperator LinearOperator::zero(Index rows, Index cols) {
  LinearOperator op;
  op.kind_ = Kind::Zero;
  op.rows_ = rows;
  op.cols_ = cols;
  return op;
}

VectorXd LinearOperator::apply(const VectorXd& v) const {
  if (v.size() != cols_) throw std::invalid_argument("LinearOperator::apply: dimension mismatch");
  switch (kind_) {
    case Kind::Dense: return mat_ * v;
    case Kind::Diagonal: return diag_.cwiseProduct(v);
    case Kind::Identity: return v;
    case Kind::Zero: return VectorXd::Zero(rows_);
  }
  throw std::logic_error("unreachable");
}

VectorXd LinearOperator::applyAdjoint(const VectorXd& u) const {
  if (u.size() != rows_) throw std::invalid_argument("LinearOperator::applyAdjoint: dimension mismatch");
  switch (kind_) {
    case Kind::Dense: return mat_.transpose() * u;
    case Kind::Diagonal: return diag_.cwiseProduct(u);
    case Kind::Identity: return u;
    case Kind::Zero: return VectorXd::Zero(cols_);
  }
  throw std::logic_error("unreachable");
}

namespace {

// Power iteration on m'm with a deterministic all-ones start vector.
double densePowerIterationNorm(const MatrixXd& m) {
  const Index n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  VectorXd v = VectorXd::Ones(n);
  v /= v.norm();
  double sigma_sq = 0.0;
  for (int it = 0; it < 10000; ++it) {
    VectorXd w = m.transpose() * (m * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;  // start vector in the null space or zero matrix
    v = w / next;
    if (std::abs(next - sigma_sq) <= 1e-10 * std::max(next, 1e-300)) {
      sigma_sq = next;
      break;
    }
    sigma_sq = next;
  }
  return std::sqrt(sigma_sq);
}

}  // namespace

double LinearOperator::norm() const {
  if (cached_norm_) return *cached_norm_;
  double n = 0.0;
  switch (kind_) {
    case Kind::Dense: n = densePowerIterationNorm(mat_); break;
    case Kind::Diagonal: n = diag_.size() > 0 ? diag_.cwiseAbs().maxCoeff() : 0.0; break;
    case Kind::Identity: n = rows_ > 0 ? 1.0 : 0.0; break;
    case Kind::Zero: n = 0.0; break;
  }
  cached_norm_ = n;
  return n;
}

LinearOperator LinearOperator::negated() const {
  switch (kind_) {
    case Kind::Dense: return dense(-mat_);
    case Kind::Diagonal: return diagonal(-diag_);
    case Kind::Identity: return diagonal(-VectorXd::Ones(rows_));
    case Kind::Zero: return *this;
  }
  throw std::logic_error("unreachable");
}

}  // namespace pdsa
