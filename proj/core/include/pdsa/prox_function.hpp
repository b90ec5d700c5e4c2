#pragma once

#include <Eigen/Dense>

namespace pdsa {

using Eigen::Index;
using Eigen::VectorXd;

/// Proximable separable function. Every variant has a closed-form prox and a
/// closed-form subdifferential, so both proximal steps and stationarity
/// residuals are exact.
class ProxFunction {
 public:
  enum class Kind { Zero, L1, SquaredL2, ElasticNet, ShiftedL1 };

  static ProxFunction zero(Index dim);
  static ProxFunction l1(double w, Index dim);
  static ProxFunction squaredL2(double mu, Index dim);
  static ProxFunction elasticNet(double w, double mu, Index dim);
  static ProxFunction shiftedL1(double w, VectorXd shift);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  double weight() const { return w_; }
  /// Strong convexity modulus: 0 except for SquaredL2/ElasticNet.
  double strongConvexity() const { return mu_; }
  const VectorXd& shift() const { return shift_; }

  double value(const VectorXd& x) const;

  /// argmin_u value(u) + (rho/2)||u - v||^2, rho > 0.
  VectorXd prox(const VectorXd& v, double rho) const;

  /// Coordinate-wise prox with a per-coordinate curvature rho_i > 0.
  VectorXd proxDiag(const VectorXd& v, const VectorXd& rho) const;

  /// Euclidean distance from v to the subdifferential at x.
  double subdiffDistance(const VectorXd& x, const VectorXd& v) const;

 private:
  ProxFunction() = default;
  double proxCoord(Index i, double v, double rho) const;

  Kind kind_ = Kind::Zero;
  Index dim_ = 0;
  double w_ = 0.0;
  double mu_ = 0.0;
  VectorXd shift_;
};

}  // namespace pdsa
