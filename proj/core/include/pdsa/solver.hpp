#pragma once

#include <functional>
#include <optional>

#include "pdsa/problem.hpp"
#include "pdsa/schedule.hpp"
#include "pdsa/trace.hpp"

namespace pdsa {

enum class Algorithm { Joint, Split, Nonseparable };

Algorithm algorithm_from_string(const std::string& name);
std::string algorithm_name(Algorithm a);

/// Iterates at index k (k starts at 1 with x_1 = x_0, Z_1 = gamma x_0).
struct SolverState {
  long k = 1;
  VectorXd x;
  VectorXd y;
  VectorXd lambda;
  VectorXd Z;
  VectorXd H;
};

/// Z^delta_k = delta Z_k + (1 - delta gamma) x_k.
VectorXd z_delta(const SolverState& st, const ParameterSchedule& s);
VectorXd h_delta(const SolverState& st, const ParameterSchedule& s);

/// Tolerance and budget for the inner proximal solver. Effective tolerance at
/// outer iteration k is min(tol_floor, 1/k^2).
struct InnerConfig {
  double tol_floor = 1e-8;
  long max_inner = 5000;
  double tolAt(long k) const;
};

/// Intermediates of the latest step, exposed for residual checks.
struct StepWorkspace {
  VectorXd lambda_tilde;                   // joint / nonseparable
  VectorXd lambda_tilde1, lambda_tilde2;   // splitting
  VectorXd lambda_bar, lambda_hat;
  VectorXd x_tilde, y_tilde;
  VectorXd lambda_increment;               // lambda_{k+1} - lambda_k, as evaluated
  double inner_residual = 0.0;
  long inner_iterations = 0;
};

SolverState init_state(const ProblemInstance& p, const ParameterSchedule& s, VectorXd x0,
                       VectorXd y0, VectorXd lambda0);

SolverState step_joint(const ProblemInstance& p, const ParameterSchedule& s,
                       const SolverState& st, StepWorkspace& ws, const InnerConfig& inner);
SolverState step_split(const ProblemInstance& p, const ParameterSchedule& s,
                       const SolverState& st, StepWorkspace& ws, const InnerConfig& inner);
SolverState step_nonseparable(const ProblemInstance& p, const ParameterSchedule& s,
                              const SolverState& st, StepWorkspace& ws, const InnerConfig& inner);
SolverState step(Algorithm alg, const ProblemInstance& p, const ParameterSchedule& s,
                 const SolverState& st, StepWorkspace& ws, const InnerConfig& inner);

/// Max residual of the three inclusion relations of the underlying
/// discretization, evaluated at the transition prev -> next with the
/// multiplier estimates recorded in ws.
double scheme_residual(const ProblemInstance& p, const ParameterSchedule& s, Algorithm alg,
                       const SolverState& prev, const SolverState& next, const StepWorkspace& ws);

/// Called on the initial state and on every sampled iterate; returns the row
/// to record (without wall_ms, which the driver fills in when enabled).
using ProbeFn =
    std::function<TraceRow(const SolverState& st, const StepWorkspace* ws)>;

struct RunConfig {
  Algorithm alg = Algorithm::Joint;
  long iterations = 1000;  // number of outer steps; final state has k = iterations + 1
  long stride = 1;         // record every stride-th k plus the first and last
  InnerConfig inner;
  bool record_wall = true;
  bool validate = true;    // reject schedules violating the standing assumptions
  // Optional early stops, checked on probe strides only.
  std::optional<double> feas_tol;
  std::optional<double> obj_tol;   // needs phi_star
  std::optional<double> phi_star;
};

struct RunResult {
  SolverState state;
  IterationTrace trace;
  ValidationReport schedule_report;
  double wall_ms = 0.0;
};

RunResult run(const ProblemInstance& p, const ParameterSchedule& s, SolverState st,
              const RunConfig& cfg, const ProbeFn& probe);

}  // namespace pdsa
