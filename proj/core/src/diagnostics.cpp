#include "pdsa/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace pdsa {

EnergyBreakdown energy_at(const ProblemInstance& p, const ParameterSchedule& s,
                          const SolverState& st, const SaddlePoint& sp) {
  const double beta = s.beta.at(st.k);
  const double eps = s.epsilon.at(st.k);
  const double lstar = p.lagrangian(sp.x, sp.y, sp.lambda);
  EnergyBreakdown e;
  e.i1 = s.delta * s.delta * beta *
         (p.lagrangian(st.x, st.y, sp.lambda) - lstar +
          0.5 * eps * (st.x.squaredNorm() + st.y.squaredNorm()));
  e.i2 = 0.5 * (z_delta(st, s) - sp.x).squaredNorm() + 0.5 * (h_delta(st, s) - sp.y).squaredNorm();
  e.i3 = 0.5 * (s.delta * s.gamma - 1.0) *
         ((st.x - sp.x).squaredNorm() + (st.y - sp.y).squaredNorm());
  e.i4 = 0.5 * s.delta * (st.lambda - sp.lambda).squaredNorm();
  return e;
}

double lyapunov_split_at(const ProblemInstance& p, const ParameterSchedule& s,
                         const SolverState& st, const SaddlePoint& sp) {
  const double ab = s.alpha.at(st.k) * s.beta.at(st.k);
  const double extra = 0.5 * s.delta * ab * ab * p.B().apply(h_delta(st, s) - sp.y).squaredNorm();
  return energy_at(p, s, st, sp).total() + extra;
}

double energy_step_bound(const ParameterSchedule& s, long k, const SaddlePoint& sp) {
  return 0.5 * s.delta * s.alpha.at(k) * s.beta.at(k) * s.epsilon.at(k) *
         (sp.x.squaredNorm() + sp.y.squaredNorm());
}

ProbeFn make_probe(const ProblemInstance& p, const ParameterSchedule& s, ProbeOptions opts) {
  const ProblemInstance* pp = &p;
  return [pp, s, opts = std::move(opts)](const SolverState& st,
                                         const StepWorkspace* ws) -> TraceRow {
    TraceRow row;
    row.k = st.k;
    row.feasibility = pp->feasibility(st.x, st.y);
    row.iterate_norm = std::sqrt(st.x.squaredNorm() + st.y.squaredNorm());
    if (opts.reference) {
      const auto& sp = *opts.reference;
      row.objective_residual = std::abs(pp->objective(st.x, st.y) - sp.phi);
      double gap = pp->lagrangian(st.x, st.y, sp.lambda) - pp->lagrangian(sp.x, sp.y, sp.lambda);
      if (gap < 0.0 && gap >= -1e-10) {
        gap = 0.0;
        if (opts.gap_clamp_count != nullptr) ++*opts.gap_clamp_count;
      }
      row.lagrangian_gap = gap;
      row.energy = opts.split_lyapunov ? lyapunov_split_at(*pp, s, st, sp)
                                       : energy_at(*pp, s, st, sp).total();
    }
    if (opts.dist_target) {
      row.dist_to_point = std::sqrt((st.x - opts.dist_target->first).squaredNorm() +
                                    (st.y - opts.dist_target->second).squaredNorm());
    }
    if (ws != nullptr) row.inner_residual = ws->inner_residual;
    return row;
  };
}

namespace {

const std::optional<double>& column_of(const TraceRow& r, const std::string& name) {
  if (name == "objective_residual") return r.objective_residual;
  if (name == "feasibility") return r.feasibility;
  if (name == "lagrangian_gap") return r.lagrangian_gap;
  if (name == "iterate_norm") return r.iterate_norm;
  if (name == "dist_to_point") return r.dist_to_point;
  if (name == "energy") return r.energy;
  if (name == "inner_residual") return r.inner_residual;
  throw std::invalid_argument("fit_rate: unknown column '" + name + "'");
}

}  // namespace

std::optional<RateFit> fit_rate(const IterationTrace& t, const std::string& column, long kmin,
                                long kmax) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  long n = 0;
  for (const auto& r : t.rows) {
    if (r.k < kmin || r.k > kmax) continue;
    const auto& v = column_of(r, column);
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) continue;
    const double lx = std::log10(double(r.k));
    const double ly = std::log10(*v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 10) return std::nullopt;
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  RateFit f;
  f.n = n;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  const double sstot = syy - sy * sy / n;
  const double ssres = sstot - f.slope * (sxy - sx * sy / n);
  f.r2 = sstot > 0.0 ? 1.0 - ssres / sstot : 1.0;
  return f;
}

}  // namespace pdsa
