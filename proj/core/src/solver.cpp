#include "pdsa/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pdsa/subproblem.hpp"

namespace pdsa {

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "joint") return Algorithm::Joint;
  if (name == "split") return Algorithm::Split;
  if (name == "nonseparable") return Algorithm::Nonseparable;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Joint: return "joint";
    case Algorithm::Split: return "split";
    case Algorithm::Nonseparable: return "nonseparable";
  }
  throw std::logic_error("unreachable");
}

VectorXd z_delta(const SolverState& st, const ParameterSchedule& s) {
  return s.delta * st.Z + (1.0 - s.delta * s.gamma) * st.x;
}

VectorXd h_delta(const SolverState& st, const ParameterSchedule& s) {
  return s.delta * st.H + (1.0 - s.delta * s.gamma) * st.y;
}

double InnerConfig::tolAt(long k) const {
  return std::min(tol_floor, 1.0 / (double(k) * double(k)));
}

SolverState init_state(const ProblemInstance& p, const ParameterSchedule& s, VectorXd x0,
                       VectorXd y0, VectorXd lambda0) {
  if (x0.size() != p.nx() || y0.size() != p.ny() || lambda0.size() != p.m())
    throw std::invalid_argument("init_state: dimension mismatch");
  if (s.gamma <= 0.0 || s.delta <= 0.0)
    throw std::invalid_argument("init_state: gamma and delta must be positive");
  SolverState st;
  st.k = 1;
  st.Z = s.gamma * x0;
  st.H = s.gamma * y0;
  st.x = std::move(x0);
  st.y = std::move(y0);
  st.lambda = std::move(lambda0);
  return st;
}

SolverState step_joint(const ProblemInstance& p, const ParameterSchedule& s,
                       const SolverState& st, StepWorkspace& ws, const InnerConfig& inner) {
  const StepCoefficients c = coeffs_at(s, st.k, p.muF(), p.muG());
  const double ab = c.alpha * c.beta;
  const double wx = c.eta_f / ab;
  const double wy = c.eta_g / ab;

  const VectorXd r = p.constraintResidual(st.x, st.y);
  ws.lambda_tilde = st.lambda - s.delta * c.beta * r;
  ws.x_tilde = st.x + (st.Z - s.gamma * st.x) / c.eta_f;
  ws.y_tilde = st.y + (st.H - s.gamma * st.y) / c.eta_g;

  const auto q = assemble_joint(p, c.theta, wx, wy, c.epsilon, ws.lambda_tilde, ws.x_tilde,
                                ws.y_tilde);
  const auto sol = solve_composite(q, {st.x, st.y}, inner.tolAt(st.k), inner.max_inner);
  ws.inner_residual = sol.residual;
  ws.inner_iterations = sol.inner_iterations;

  SolverState next;
  next.k = st.k + 1;
  next.x = sol.solution[0];
  next.y = sol.solution[1];
  next.Z = (next.x - st.x) / c.alpha + s.gamma * next.x;
  next.H = (next.y - st.y) / c.alpha + s.gamma * next.y;

  const VectorXd zd = z_delta(next, s);
  const VectorXd hd = h_delta(next, s);
  ws.lambda_increment = ab * (p.A().apply(zd) + p.B().apply(hd) - p.b());
  next.lambda = st.lambda + ws.lambda_increment;
  ws.lambda_bar = next.lambda;
  ws.lambda_hat = next.lambda;
  return next;
}

SolverState step_split(const ProblemInstance& p, const ParameterSchedule& s,
                       const SolverState& st, StepWorkspace& ws, const InnerConfig& inner) {
  const StepCoefficients c = coeffs_at(s, st.k, p.muF(), p.muG());
  const double ab = c.alpha * c.beta;
  const double wx = c.eta_f / ab;
  const double wy = c.eta_g / ab;
  const double tol = inner.tolAt(st.k);

  const VectorXd r = p.constraintResidual(st.x, st.y);
  const VectorXd hd_old = h_delta(st, s);

  SolverState next;
  next.k = st.k + 1;

  ws.lambda_tilde1 =
      st.lambda - s.delta * c.beta * r + s.delta * ab * p.B().apply(st.H - s.gamma * st.y);
  ws.x_tilde = st.x + (st.Z - s.gamma * st.x) / c.eta_f;
  const auto qx = assemble_x_split(p, c.theta, wx, c.epsilon, ws.lambda_tilde1, ws.x_tilde, st.y);
  const auto solx = solve_composite(qx, {st.x}, tol, inner.max_inner);
  next.x = solx.solution[0];
  next.Z = (next.x - st.x) / c.alpha + s.gamma * next.x;
  const VectorXd zd = z_delta(next, s);

  ws.lambda_tilde2 = st.lambda - s.delta * c.beta * r;
  ws.y_tilde = st.y + (st.H - s.gamma * st.y) / c.eta_g;
  const auto qy = assemble_y_split(p, c.theta, wy, c.epsilon, ws.lambda_tilde2, ws.y_tilde, next.x);
  const auto soly = solve_composite(qy, {st.y}, tol, inner.max_inner);
  next.y = soly.solution[0];
  next.H = (next.y - st.y) / c.alpha + s.gamma * next.y;
  const VectorXd hd = h_delta(next, s);

  const VectorXd az = p.A().apply(zd);
  ws.lambda_increment = ab * (az + p.B().apply(hd) - p.b());
  next.lambda = st.lambda + ws.lambda_increment;
  ws.lambda_bar = st.lambda + ab * (az + p.B().apply(hd_old) - p.b());
  ws.lambda_hat = next.lambda;

  ws.inner_residual = std::max(solx.residual, soly.residual);
  ws.inner_iterations = solx.inner_iterations + soly.inner_iterations;
  return next;
}

SolverState step_nonseparable(const ProblemInstance& p, const ParameterSchedule& s,
                              const SolverState& st, StepWorkspace& ws,
                              const InnerConfig& inner) {
  if (p.ny() != 0)
    throw std::invalid_argument("step_nonseparable: second block must be zero-dimensional");
  return step_joint(p, s, st, ws, inner);
}

SolverState step(Algorithm alg, const ProblemInstance& p, const ParameterSchedule& s,
                 const SolverState& st, StepWorkspace& ws, const InnerConfig& inner) {
  switch (alg) {
    case Algorithm::Joint: return step_joint(p, s, st, ws, inner);
    case Algorithm::Split: return step_split(p, s, st, ws, inner);
    case Algorithm::Nonseparable: return step_nonseparable(p, s, st, ws, inner);
  }
  throw std::logic_error("unreachable");
}

double scheme_residual(const ProblemInstance& p, const ParameterSchedule& s, Algorithm alg,
                       const SolverState& prev, const SolverState& next,
                       const StepWorkspace& ws) {
  (void)alg;  // the relations are algorithm-independent given ws
  const StepCoefficients c = coeffs_at(s, prev.k, p.muF(), p.muG());
  const double ab = c.alpha * c.beta;
  const VectorXd zd = z_delta(next, s);
  const VectorXd hd = h_delta(next, s);

  const VectorXd vf = -(next.Z - prev.Z) / ab - p.A().applyAdjoint(ws.lambda_bar) -
                      c.epsilon * next.x + p.muF() * (next.x - zd);
  double res = p.f().subdiffDistance(next.x, vf);

  if (p.ny() > 0) {
    const VectorXd vg = -(next.H - prev.H) / ab - p.B().applyAdjoint(ws.lambda_hat) -
                        c.epsilon * next.y + p.muG() * (next.y - hd);
    res = std::max(res, p.g().subdiffDistance(next.y, vg));
  }

  const VectorXd rl =
      (next.lambda - prev.lambda) / c.alpha - c.beta * (p.A().apply(zd) + p.B().apply(hd) - p.b());
  return std::max(res, rl.norm());
}

RunResult run(const ProblemInstance& p, const ParameterSchedule& s, SolverState st,
              const RunConfig& cfg, const ProbeFn& probe) {
  if (cfg.iterations < 0) throw std::invalid_argument("run: iterations must be nonnegative");
  if (cfg.stride < 1) throw std::invalid_argument("run: stride must be positive");

  RunResult out;
  const long K = cfg.iterations + 1;
  out.schedule_report = cfg.alg == Algorithm::Split
                            ? validate_assumption2(s, p.B().norm(), p.muG(), std::max(K, 2L))
                            : validate_assumption1(s, std::max(K, 2L));
  if (cfg.validate && !out.schedule_report.pass())
    throw std::invalid_argument("run: schedule rejected: " + out.schedule_report.summary());

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  StepWorkspace ws;
  if (probe) {
    TraceRow row = probe(st, nullptr);
    if (cfg.record_wall) row.wall_ms = elapsed_ms();
    out.trace.rows.push_back(std::move(row));
  }
  if (cfg.obj_tol && !cfg.phi_star)
    throw std::invalid_argument("run: obj_tol requires phi_star");
  for (long i = 1; i <= cfg.iterations; ++i) {
    st = step(cfg.alg, p, s, st, ws, cfg.inner);
    const bool sampled = st.k % cfg.stride == 0 || i == cfg.iterations;
    if (probe && sampled) {
      TraceRow row = probe(st, &ws);
      if (cfg.record_wall) row.wall_ms = elapsed_ms();
      out.trace.rows.push_back(std::move(row));
    }
    if (sampled && (cfg.feas_tol || cfg.obj_tol)) {
      const bool feas_ok = !cfg.feas_tol || p.feasibility(st.x, st.y) <= *cfg.feas_tol;
      const bool obj_ok =
          !cfg.obj_tol || std::abs(p.objective(st.x, st.y) - *cfg.phi_star) <= *cfg.obj_tol;
      if (feas_ok && obj_ok) break;
    }
  }
  out.wall_ms = elapsed_ms();
  out.state = std::move(st);
  return out;
}

}  // namespace pdsa
