#pragma once

#include <optional>
#include <string>

#include "pdsa/solver.hpp"

namespace pdsa {

/// The four terms of the energy function associated with a saddle point.
struct EnergyBreakdown {
  double i1 = 0.0;  // scaled regularized Lagrangian gap
  double i2 = 0.0;  // extrapolated-momentum distances
  double i3 = 0.0;  // primal anchor distances
  double i4 = 0.0;  // dual anchor distance
  double total() const { return i1 + i2 + i3 + i4; }
};

EnergyBreakdown energy_at(const ProblemInstance& p, const ParameterSchedule& s,
                          const SolverState& st, const SaddlePoint& sp);

/// Energy augmented with the B-momentum term that the splitting method
/// contracts: E_k + (delta alpha_k^2 beta_k^2 / 2) ||B(H^delta_k - y*)||^2.
double lyapunov_split_at(const ProblemInstance& p, const ParameterSchedule& s,
                         const SolverState& st, const SaddlePoint& sp);

/// Admissible one-step energy increase: (delta alpha_k beta_k eps_k / 2)
/// (||x*||^2 + ||y*||^2), evaluated at prev.k.
double energy_step_bound(const ParameterSchedule& s, long k, const SaddlePoint& sp);

struct ProbeOptions {
  /// Enables objective_residual, lagrangian_gap and energy.
  std::optional<SaddlePoint> reference;
  /// Enables dist_to_point (distance of (x_k, y_k) to this primal pair).
  std::optional<std::pair<VectorXd, VectorXd>> dist_target;
  bool split_lyapunov = false;  // record the augmented energy instead
  /// Rounding near the optimum can leave the Lagrangian gap a hair negative;
  /// gaps in [-1e-10, 0) are clamped to 0 and counted here when set.
  long* gap_clamp_count = nullptr;
};

/// Standard per-iteration metric row. The returned callable keeps a pointer
/// to `p`, which must outlive it.
ProbeFn make_probe(const ProblemInstance& p, const ParameterSchedule& s, ProbeOptions opts);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  long n = 0;
};

/// Least-squares fit of log10(column) against log10(k) over rows with
/// k in [kmin, kmax] and a positive finite value. Columns by CSV name.
/// Empty when fewer than 10 usable rows remain.
std::optional<RateFit> fit_rate(const IterationTrace& t, const std::string& column, long kmin,
                                long kmax);

}  // namespace pdsa
