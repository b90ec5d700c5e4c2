#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pdsa/linear_operator.hpp"
#include "pdsa/prox_function.hpp"

namespace pdsa {

/// Primal-dual optimality certificate: (x*, y*, lambda*) plus the optimal
/// objective value.
struct SaddlePoint {
  VectorXd x;
  VectorXd y;
  VectorXd lambda;
  double phi = 0.0;
};

/// min f(x) + g(y)  s.t.  A x + B y = b. The second block may be
/// zero-dimensional, which encodes the single-block problem.
class ProblemInstance {
 public:
  ProblemInstance(ProxFunction f, ProxFunction g, LinearOperator A, LinearOperator B, VectorXd b);

  const ProxFunction& f() const { return f_; }
  const ProxFunction& g() const { return g_; }
  const LinearOperator& A() const { return A_; }
  const LinearOperator& B() const { return B_; }
  const VectorXd& b() const { return b_; }

  Index nx() const { return f_.dim(); }
  Index ny() const { return g_.dim(); }
  Index m() const { return b_.size(); }
  bool separable() const { return ny() > 0; }

  double muF() const { return f_.strongConvexity(); }
  double muG() const { return g_.strongConvexity(); }

  double objective(const VectorXd& x, const VectorXd& y) const;
  VectorXd constraintResidual(const VectorXd& x, const VectorXd& y) const;
  double feasibility(const VectorXd& x, const VectorXd& y) const;

  double lagrangian(const VectorXd& x, const VectorXd& y, const VectorXd& lambda) const;
  double augmentedLagrangian(const VectorXd& x, const VectorXd& y, const VectorXd& lambda,
                             double theta) const;

  /// max of feasibility norm and the two stationarity subdifferential
  /// distances dist(-A'lambda, df(x)), dist(-B'lambda, dg(y)).
  double kktResidual(const VectorXd& x, const VectorXd& y, const VectorXd& lambda) const;
  double kktResidual(const SaddlePoint& s) const;

  nlohmann::json toJson() const;
  static ProblemInstance fromJson(const nlohmann::json& j);

 private:
  ProxFunction f_;
  ProxFunction g_;
  LinearOperator A_;
  LinearOperator B_;
  VectorXd b_;
};

nlohmann::json operatorToJson(const LinearOperator& op);
LinearOperator operatorFromJson(const nlohmann::json& j);
nlohmann::json proxFunctionToJson(const ProxFunction& f);
ProxFunction proxFunctionFromJson(const nlohmann::json& j);

}  // namespace pdsa
