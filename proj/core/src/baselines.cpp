#include "pdsa/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "pdsa/subproblem.hpp"

namespace pdsa {

namespace {

// argmin_v  h(v) + (rho/2) ||Op v - r||^2, warm-started at v0.
VectorXd proximal_least_squares(const ProxFunction& h, const LinearOperator& op, double rho,
                                const VectorXd& r, const VectorXd& v0,
                                const BaselineConfig& cfg) {
  CompositeQuadratic q;
  q.addBlock(&h, 0.0, rho * op.applyAdjoint(r));
  q.addCoupling(rho, {&op});
  return solve_composite(q, {v0}, cfg.inner_tol, cfg.max_inner).solution[0];
}

}  // namespace

AdmmState admm_init(const ProblemInstance& p, VectorXd x0, VectorXd y0) {
  if (x0.size() != p.nx() || y0.size() != p.ny())
    throw std::invalid_argument("admm_init: dimension mismatch");
  AdmmState st;
  st.x = std::move(x0);
  st.y = std::move(y0);
  st.u = VectorXd::Zero(p.m());
  return st;
}

void admm_step(const ProblemInstance& p, double rho, AdmmState& st, const BaselineConfig& cfg) {
  if (rho <= 0.0) throw std::invalid_argument("admm_step: rho must be positive");
  st.x = proximal_least_squares(p.f(), p.A(), rho, p.b() - p.B().apply(st.y) - st.u, st.x, cfg);
  st.y = proximal_least_squares(p.g(), p.B(), rho, p.b() - p.A().apply(st.x) - st.u, st.y, cfg);
  st.u += p.constraintResidual(st.x, st.y);
}

CpProblem cp_encode(const ProblemInstance& p) {
  if (p.A().kind() != LinearOperator::Kind::Identity)
    throw std::invalid_argument("cp_encode: first-block operator must be the identity");
  CpProblem cp{&p, p.B().negated(), 0.0};
  cp.normK = cp.K.norm();
  return cp;
}

CpState cp_init(const CpProblem& cp, VectorXd y0, double rho) {
  if (rho <= 0.0) throw std::invalid_argument("cp_init: rho must be positive");
  if (y0.size() != cp.src->ny()) throw std::invalid_argument("cp_init: dimension mismatch");
  CpState st;
  st.ybar = y0;
  st.y = std::move(y0);
  st.w = VectorXd::Zero(cp.src->m());
  st.sigma = rho;
  const double nk2 = cp.normK * cp.normK;
  if (nk2 <= 0.0) throw std::invalid_argument("cp_init: zero coupling operator");
  st.tau = 0.999 / (rho * nk2);
  return st;
}

namespace {

// prox of sigma F* at v where F(w) = f(b + w), via the Moreau identity.
VectorXd dual_prox(const CpProblem& cp, const VectorXd& v, double sigma) {
  const VectorXd fp = cp.src->f().prox(v / sigma + cp.src->b(), sigma) - cp.src->b();
  return v - sigma * fp;
}

void cp_step_theta(const CpProblem& cp, CpState& st, double theta) {
  st.w = dual_prox(cp, st.w + st.sigma * cp.K.apply(st.ybar), st.sigma);
  const VectorXd y_prev = st.y;
  st.y = cp.src->g().prox(st.y - st.tau * cp.K.applyAdjoint(st.w), 1.0 / st.tau);
  st.ybar = st.y + theta * (st.y - y_prev);
}

}  // namespace

void cp_step(const CpProblem& cp, CpState& st) { cp_step_theta(cp, st, 1.0); }

void cp_scvx_step(const CpProblem& cp, CpState& st, double gamma_sc) {
  if (gamma_sc <= 0.0) throw std::invalid_argument("cp_scvx_step: modulus must be positive");
  const double theta = 1.0 / std::sqrt(1.0 + 2.0 * gamma_sc * st.tau);
  cp_step_theta(cp, st, theta);
  st.tau *= theta;
  st.sigma /= theta;
}

VectorXd cp_primal_x(const CpProblem& cp, const CpState& st) {
  return cp.src->b() + cp.K.apply(st.y);
}

ReferenceResult reference_solution(const ProblemInstance& p, const ReferenceOptions& opt) {
  if (opt.check_every < 1 || opt.max_iters < 1)
    throw std::invalid_argument("reference_solution: bad iteration budget");
  AdmmState st = admm_init(p, VectorXd::Zero(p.nx()), VectorXd::Zero(p.ny()));
  ReferenceResult res;
  for (long t = 1; t <= opt.max_iters; ++t) {
    admm_step(p, opt.rho, st, opt.inner);
    res.iterations = t;
    if (t % opt.check_every == 0 || t == opt.max_iters) {
      res.kkt = p.kktResidual(st.x, st.y, opt.rho * st.u);
      if (res.kkt <= opt.kkt_tol) {
        res.converged = true;
        break;
      }
    }
  }
  res.point.x = st.x;
  res.point.y = st.y;
  res.point.lambda = opt.rho * st.u;
  res.point.phi = p.objective(st.x, st.y);
  return res;
}

}  // namespace pdsa
