#pragma once

// Small independent numeric oracles used to cross-check library results.
// Everything here is deliberately written from scratch (loops, scalar
// formulas) rather than calling into the library under test.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <utility>

namespace oracle {

// Ternary search on a unimodal scalar function over [lo, hi].
inline double ternary_min(const std::function<double(double)>& f, double lo, double hi,
                          int iters = 400) {
  for (int i = 0; i < iters; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

// Bisection for the root of a nondecreasing function.
inline double bisect_root(const std::function<double(double)>& d, double lo, double hi,
                          int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (lo + hi);
    if (d(m) <= 0.0)
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

// Distance from v to the closed interval [a, b].
inline double interval_dist(double v, double a, double b) {
  if (v < a) return a - v;
  if (v > b) return v - b;
  return 0.0;
}

// Eigenvalues (ascending) of the symmetric matrix [[a, b], [b, c]].
inline std::pair<double, double> sym2x2_eigs(double a, double b, double c) {
  const double tr = a + c;
  const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

// Cramer solve of [[a, b], [c, d]] u = rhs.
inline Eigen::Vector2d solve2x2(double a, double b, double c, double d,
                                const Eigen::Vector2d& rhs) {
  const double det = a * d - b * c;
  return {(rhs[0] * d - b * rhs[1]) / det, (a * rhs[1] - rhs[0] * c) / det};
}

// Spectral radius of a general 2x2 matrix [[a, b], [c, d]].
inline double spectral_radius_2x2(double a, double b, double c, double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs(0.5 * (tr + s)), std::abs(0.5 * (tr - s)));
  }
  return std::sqrt(det);
}

inline Eigen::VectorXd randn(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline Eigen::MatrixXd randn_mat(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

// Largest eigenvalue of a symmetric PSD matrix by plain power iteration.
inline double power_lambda_max(const Eigen::MatrixXd& m, int iters = 2000) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.cols());
  v.normalize();
  double lam = 0.0;
  for (int i = 0; i < iters; ++i) {
    Eigen::VectorXd w = m * v;
    lam = v.dot(w);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
  }
  return lam;
}

}  // namespace oracle
