#include "pdsa/prox_function.hpp"

#include <cmath>
#include <stdexcept>

namespace pdsa {

namespace {

double softThreshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Distance from v to the subdifferential of w*|.| at x, one coordinate.
double l1SubdiffDistCoord(double x, double v, double w) {
  if (x == 0.0) {
    if (v > w) return v - w;
    if (v < -w) return -w - v;
    return 0.0;
  }
  return std::abs(v - w * (x > 0.0 ? 1.0 : -1.0));
}

}  // namespace

ProxFunction ProxFunction::zero(Index dim) {
  ProxFunction f;
  f.kind_ = Kind::Zero;
  f.dim_ = dim;
  return f;
}

ProxFunction ProxFunction::l1(double w, Index dim) {
  if (w <= 0.0) throw std::invalid_argument("ProxFunction::l1: weight must be positive");
  ProxFunction f;
  f.kind_ = Kind::L1;
  f.dim_ = dim;
  f.w_ = w;
  return f;
}

ProxFunction ProxFunction::squaredL2(double mu, Index dim) {
  if (mu <= 0.0) throw std::invalid_argument("ProxFunction::squaredL2: mu must be positive");
  ProxFunction f;
  f.kind_ = Kind::SquaredL2;
  f.dim_ = dim;
  f.mu_ = mu;
  return f;
}

ProxFunction ProxFunction::elasticNet(double w, double mu, Index dim) {
  if (w <= 0.0 || mu <= 0.0)
    throw std::invalid_argument("ProxFunction::elasticNet: weights must be positive");
  ProxFunction f;
  f.kind_ = Kind::ElasticNet;
  f.dim_ = dim;
  f.w_ = w;
  f.mu_ = mu;
  return f;
}

ProxFunction ProxFunction::shiftedL1(double w, VectorXd shift) {
  if (w <= 0.0) throw std::invalid_argument("ProxFunction::shiftedL1: weight must be positive");
  ProxFunction f;
  f.kind_ = Kind::ShiftedL1;
  f.dim_ = shift.size();
  f.w_ = w;
  f.shift_ = std::move(shift);
  return f;
}

double ProxFunction::value(const VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ProxFunction::value: dimension mismatch");
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::L1: return w_ * x.lpNorm<1>();
    case Kind::SquaredL2: return 0.5 * mu_ * x.squaredNorm();
    case Kind::ElasticNet: return w_ * x.lpNorm<1>() + 0.5 * mu_ * x.squaredNorm();
    case Kind::ShiftedL1: return w_ * (x - shift_).lpNorm<1>();
  }
  throw std::logic_error("unreachable");
}

double ProxFunction::proxCoord(Index i, double v, double rho) const {
  switch (kind_) {
    case Kind::Zero: return v;
    case Kind::L1: return softThreshold(v, w_ / rho);
    case Kind::SquaredL2: return rho / (mu_ + rho) * v;
    case Kind::ElasticNet: return rho / (mu_ + rho) * softThreshold(v, w_ / rho);
    case Kind::ShiftedL1: return shift_[i] + softThreshold(v - shift_[i], w_ / rho);
  }
  throw std::logic_error("unreachable");
}

VectorXd ProxFunction::prox(const VectorXd& v, double rho) const {
  if (v.size() != dim_) throw std::invalid_argument("ProxFunction::prox: dimension mismatch");
  if (rho <= 0.0) throw std::invalid_argument("ProxFunction::prox: rho must be positive");
  VectorXd u(dim_);
  for (Index i = 0; i < dim_; ++i) u[i] = proxCoord(i, v[i], rho);
  return u;
}

VectorXd ProxFunction::proxDiag(const VectorXd& v, const VectorXd& rho) const {
  if (v.size() != dim_ || rho.size() != dim_)
    throw std::invalid_argument("ProxFunction::proxDiag: dimension mismatch");
  VectorXd u(dim_);
  for (Index i = 0; i < dim_; ++i) {
    if (rho[i] <= 0.0) throw std::invalid_argument("ProxFunction::proxDiag: rho must be positive");
    u[i] = proxCoord(i, v[i], rho[i]);
  }
  return u;
}

double ProxFunction::subdiffDistance(const VectorXd& x, const VectorXd& v) const {
  if (x.size() != dim_ || v.size() != dim_)
    throw std::invalid_argument("ProxFunction::subdiffDistance: dimension mismatch");
  double sq = 0.0;
  switch (kind_) {
    case Kind::Zero:
      sq = v.squaredNorm();
      break;
    case Kind::L1:
      for (Index i = 0; i < dim_; ++i) {
        const double d = l1SubdiffDistCoord(x[i], v[i], w_);
        sq += d * d;
      }
      break;
    case Kind::SquaredL2:
      sq = (v - mu_ * x).squaredNorm();
      break;
    case Kind::ElasticNet:
      for (Index i = 0; i < dim_; ++i) {
        const double d = l1SubdiffDistCoord(x[i], v[i] - mu_ * x[i], w_);
        sq += d * d;
      }
      break;
    case Kind::ShiftedL1:
      for (Index i = 0; i < dim_; ++i) {
        const double d = l1SubdiffDistCoord(x[i] - shift_[i], v[i], w_);
        sq += d * d;
      }
      break;
  }
  return std::sqrt(sq);
}

}  // namespace pdsa
