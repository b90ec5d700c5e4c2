#pragma once

#include "pdsa/problem.hpp"

namespace pdsa {

/// Inner-solve budget shared by the baseline methods.
struct BaselineConfig {
  double inner_tol = 1e-10;
  long max_inner = 20000;
};

/// Two-block ADMM in scaled form; multiplier is rho * u.
struct AdmmState {
  VectorXd x, y, u;
};

AdmmState admm_init(const ProblemInstance& p, VectorXd x0, VectorXd y0);
void admm_step(const ProblemInstance& p, double rho, AdmmState& st, const BaselineConfig& cfg);

/// min_y g(y) + f(b + K y) with K = -B; requires A to be the identity.
struct CpProblem {
  const ProblemInstance* src = nullptr;
  LinearOperator K;
  double normK = 0.0;
};

CpProblem cp_encode(const ProblemInstance& p);

struct CpState {
  VectorXd y, ybar, w;  // w is the dual variable of F(K y)
  double sigma = 0.0;
  double tau = 0.0;
};

/// sigma = rho, tau = 0.999 / (rho ||K||^2).
CpState cp_init(const CpProblem& cp, VectorXd y0, double rho);

/// Plain primal-dual step, extrapolation factor 1.
void cp_step(const CpProblem& cp, CpState& st);

/// Accelerated step for strongly convex g; gamma_sc > 0 is its modulus.
void cp_scvx_step(const CpProblem& cp, CpState& st, double gamma_sc);

/// Primal iterate implied by the encoding: x = b + K y.
VectorXd cp_primal_x(const CpProblem& cp, const CpState& st);

struct ReferenceOptions {
  double rho = 1.0;
  double kkt_tol = 1e-9;
  long max_iters = 200000;
  long check_every = 50;
  BaselineConfig inner;
};

struct ReferenceResult {
  SaddlePoint point;
  double kkt = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// High-accuracy solve by ADMM, stopping on the KKT residual.
ReferenceResult reference_solution(const ProblemInstance& p, const ReferenceOptions& opt);

}  // namespace pdsa
