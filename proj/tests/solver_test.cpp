#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pdsa/diagnostics.hpp"
#include "pdsa/solver.hpp"
#include "pdsa/trace.hpp"

using namespace pdsa;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

ParameterSchedule make_sched(double gamma, double delta, SequenceFamily alpha,
                             SequenceFamily beta, SequenceFamily eps) {
  ParameterSchedule s;
  s.gamma = gamma;
  s.delta = delta;
  s.alpha = std::move(alpha);
  s.beta = std::move(beta);
  s.epsilon = std::move(eps);
  return s;
}

ParameterSchedule unit_sched(double gamma, double delta) {
  return make_sched(gamma, delta, SequenceFamily::constant(1.0), SequenceFamily::constant(1.0),
                    SequenceFamily::constant(0.0));
}

// 1-D two-block model with trivial objectives: x + y = 0.
ProblemInstance toy1d() {
  return ProblemInstance(ProxFunction::zero(1), ProxFunction::zero(1),
                         LinearOperator::identity(1), LinearOperator::identity(1),
                         VectorXd::Zero(1));
}

// Example 2 Case I with its analytic saddle certificate.
ProblemInstance case1_instance() {
  return ProblemInstance(ProxFunction::shiftedL1(1.0, vec3(2, 2, 2)), ProxFunction::l1(3.0, 3),
                         LinearOperator::identity(3), LinearOperator::diagonal(vec3(-2, -3, -1)),
                         VectorXd::Zero(3));
}

SaddlePoint case1_saddle() {
  SaddlePoint sp;
  sp.x = VectorXd::Zero(3);
  sp.y = VectorXd::Zero(3);
  sp.lambda = vec3(1, 1, 1);
  sp.phi = 6.0;
  return sp;
}

// Single-block model: f = 0, x = 1.
ProblemInstance toy_single() {
  return ProblemInstance(ProxFunction::zero(1), ProxFunction::zero(0),
                         LinearOperator::identity(1), LinearOperator::zero(1, 0),
                         VectorXd::Ones(1));
}

}  // namespace

TEST_CASE("state initialization") {
  const auto p = case1_instance();
  const auto s = unit_sched(2.0, 0.6);

  SUBCASE("zero start has zero momentum") {
    const auto st = init_state(p, s, VectorXd::Zero(3), VectorXd::Zero(3), VectorXd::Zero(3));
    CHECK(st.k == 1);
    CHECK(st.Z.norm() == 0.0);
    CHECK(st.H.norm() == 0.0);
  }

  SUBCASE("momentum is gamma times the start") {
    const VectorXd y0 = vec3(-0.5, 0.5, 1);
    const auto st = init_state(p, s, VectorXd::Zero(3), y0, VectorXd::Zero(3));
    CHECK((st.H - vec3(-1, 1, 2)).norm() == 0.0);
  }

  SUBCASE("extrapolated momentum at a saddle start is the saddle itself") {
    const auto sp = case1_saddle();
    const auto st = init_state(p, s, sp.x, sp.y, sp.lambda);
    CHECK((z_delta(st, s) - sp.x).norm() <= 1e-15);
    CHECK((h_delta(st, s) - sp.y).norm() <= 1e-15);
  }

  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS(init_state(p, s, VectorXd::Zero(2), VectorXd::Zero(3), VectorXd::Zero(3)));
  }
}

TEST_CASE("joint step on the 1-d model matches a closed-form 2x2 solve") {
  const auto p = toy1d();
  const auto s = unit_sched(2.0, 0.6);
  auto st = init_state(p, s, VectorXd::Ones(1), VectorXd::Ones(1), VectorXd::Zero(1));
  CHECK(st.Z[0] == 2.0);
  CHECK(st.H[0] == 2.0);

  StepWorkspace ws;
  InnerConfig inner;
  inner.tol_floor = 1e-12;
  const auto next = step_joint(p, s, st, ws, inner);

  // oracle: theta = 1.6, eta = 3, lambda_tilde = -1.2; stationarity is the
  // 2x2 system [[theta+3, theta], [theta, theta+3]] (x,y) = (4.2, 4.2)
  const double theta = 1.6, eta = 3.0, lt = -1.2;
  const Eigen::Vector2d sol =
      oracle::solve2x2(theta + eta, theta, theta, theta + eta, {eta - lt, eta - lt});
  CHECK(std::abs(ws.lambda_tilde[0] - lt) <= 1e-15);
  CHECK(std::abs(next.x[0] - sol[0]) <= 1e-10);
  CHECK(std::abs(next.y[0] - sol[1]) <= 1e-10);
}

TEST_CASE("momentum identity holds with the solver's own arithmetic") {
  std::mt19937_64 rng(31);
  const auto p = case1_instance();
  const auto s = make_sched(2.0, 0.6, SequenceFamily::powerLaw(1.0, -1.0),
                            SequenceFamily::powerLaw(1.0, 1.0),
                            SequenceFamily::powerLaw(1.0, -3.0));
  auto st = init_state(p, s, oracle::randn(rng, 3), oracle::randn(rng, 3), oracle::randn(rng, 3));
  StepWorkspace ws;
  InnerConfig inner;
  for (int t = 0; t < 5; ++t) {
    const double alpha = s.alpha.at(st.k);
    const auto next = step_joint(p, s, st, ws, inner);
    const VectorXd zx = (next.x - st.x) / alpha + s.gamma * next.x;
    const VectorXd zy = (next.y - st.y) / alpha + s.gamma * next.y;
    CHECK((next.Z - zx).norm() == 0.0);
    CHECK((next.H - zy).norm() == 0.0);
    // multiplier update identity, identical evaluation order
    CHECK((next.lambda - (st.lambda + ws.lambda_increment)).norm() == 0.0);
    st = next;
  }
}

TEST_CASE("all three algorithms hold a saddle fixed") {
  const auto p = case1_instance();
  const auto sp = case1_saddle();
  const auto s = unit_sched(2.0, 0.7);
  const auto st = init_state(p, s, sp.x, sp.y, sp.lambda);
  StepWorkspace ws;
  InnerConfig inner;

  for (const auto alg : {Algorithm::Joint, Algorithm::Split}) {
    const auto next = step(alg, p, s, st, ws, inner);
    CHECK((next.x - st.x).norm() <= 10.0 * inner.tolAt(1));
    CHECK((next.y - st.y).norm() <= 10.0 * inner.tolAt(1));
    CHECK((next.lambda - st.lambda).norm() <= 10.0 * inner.tolAt(1));
  }

  const auto ps = toy_single();
  // saddle of the single-block model: x = 1, lambda = 0
  const auto sts = init_state(ps, s, VectorXd::Ones(1), VectorXd(0), VectorXd::Zero(1));
  const auto nexts = step_nonseparable(ps, s, sts, ws, inner);
  CHECK(std::abs(nexts.x[0] - 1.0) <= 10.0 * inner.tolAt(1));
}

TEST_CASE("splitting step matches scalar closed forms") {
  const auto p = toy1d();
  const auto s = unit_sched(2.0, 0.6);
  const auto st = init_state(p, s, VectorXd::Ones(1), VectorXd::Ones(1), VectorXd::Zero(1));
  StepWorkspace ws;
  InnerConfig inner;
  const auto next = step_split(p, s, st, ws, inner);

  // oracle, scalar by scalar
  const double gamma = 2.0, delta = 0.6, alpha = 1.0, beta = 1.0;
  const double theta = (alpha + delta) * beta;      // 1.6
  const double w = gamma + 1.0 / alpha;             // 3
  const double x1 = 1.0, y1 = 1.0, l1 = 0.0, Z1 = 2.0, H1 = 2.0;
  const double r = x1 + y1;
  const double lt1 = l1 - delta * beta * r + delta * alpha * beta * (H1 - gamma * y1);
  const double xt = x1 + (Z1 - gamma * x1) / w;
  // x-step: curvature theta + w, linear -theta*(B y - b) - lt1 + w*xt with A = B = 1
  const double cx = -theta * (y1 - 0.0) - lt1 + w * xt;
  const double x_next = cx / (theta + w);
  const double Z2 = (x_next - x1) / alpha + gamma * x_next;
  const double zd = delta * Z2 + (1.0 - delta * gamma) * x_next;
  const double lt2 = l1 - delta * beta * r;
  const double yt = y1 + (H1 - gamma * y1) / w;
  const double cy = -theta * (x_next - 0.0) - lt2 + w * yt;
  const double y_next = cy / (theta + w);
  const double H2 = (y_next - y1) / alpha + gamma * y_next;
  const double hd = delta * H2 + (1.0 - delta * gamma) * y_next;
  const double hd_old = delta * H1 + (1.0 - delta * gamma) * y1;
  const double l_next = l1 + alpha * beta * (zd + hd);
  const double l_bar = l1 + alpha * beta * (zd + hd_old);

  CHECK(std::abs(ws.lambda_tilde1[0] - lt1) <= 1e-12);
  CHECK(std::abs(ws.lambda_tilde2[0] - lt2) <= 1e-12);
  CHECK(std::abs(next.x[0] - x_next) <= 1e-12);
  CHECK(std::abs(next.y[0] - y_next) <= 1e-12);
  CHECK(std::abs(next.lambda[0] - l_next) <= 1e-12);
  CHECK(std::abs(ws.lambda_bar[0] - l_bar) <= 1e-12);
  CHECK(std::abs(ws.lambda_hat[0] - l_next) <= 1e-12);
}

TEST_CASE("single-block step matches the scalar closed form") {
  const auto p = toy_single();
  const auto s = unit_sched(2.0, 0.6);
  const auto st = init_state(p, s, VectorXd::Zero(1), VectorXd(0), VectorXd::Zero(1));
  StepWorkspace ws;
  InnerConfig inner;
  const auto next = step_nonseparable(p, s, st, ws, inner);
  // oracle: minimize (theta/2)(x-1)^2 + lt*(x-1) + (w/2) x^2
  const double theta = 1.6, w = 3.0;
  const double lt = 0.0 - 0.6 * (0.0 - 1.0);
  const double want = (theta - lt) / (theta + w);
  CHECK(std::abs(next.x[0] - want) <= 1e-12);
}

TEST_CASE("degenerate second block: all algorithms coincide") {
  std::mt19937_64 rng(32);
  const ProblemInstance p(ProxFunction::l1(0.5, 2), ProxFunction::zero(0),
                          LinearOperator::identity(2), LinearOperator::zero(2, 0),
                          oracle::randn(rng, 2));
  const auto s = make_sched(2.0, 0.6, SequenceFamily::powerLaw(1.0, -1.0),
                            SequenceFamily::powerLaw(1.0, 1.0),
                            SequenceFamily::powerLaw(1.0, -3.0));
  auto a = init_state(p, s, oracle::randn(rng, 2), VectorXd(0), oracle::randn(rng, 2));
  auto b = a;
  auto c = a;
  StepWorkspace wa, wb, wc;
  InnerConfig inner;
  for (int t = 0; t < 100; ++t) {
    a = step_joint(p, s, a, wa, inner);
    b = step_split(p, s, b, wb, inner);
    c = step_nonseparable(p, s, c, wc, inner);
    CHECK((a.x - b.x).norm() <= 1e-14);
    CHECK((a.x - c.x).norm() <= 1e-14);
    CHECK((a.lambda - b.lambda).norm() <= 1e-14);
    CHECK((a.lambda - c.lambda).norm() <= 1e-14);
  }
}

TEST_CASE("scheme residual") {
  const auto p = case1_instance();
  const auto s = make_sched(2.0, 0.7, SequenceFamily::powerLaw(1.0, -1.0),
                            SequenceFamily::powerLaw(1.0, 1.0),
                            SequenceFamily::powerLaw(1.0, -0.5));
  std::mt19937_64 rng(33);

  SUBCASE("exact inner solves keep the residual small") {
    auto st = init_state(p, s, oracle::randn(rng, 3), oracle::randn(rng, 3),
                         oracle::randn(rng, 3));
    StepWorkspace ws;
    InnerConfig inner;
    for (int t = 0; t < 50; ++t) {
      const auto next = step_split(p, s, st, ws, inner);
      CHECK(scheme_residual(p, s, Algorithm::Split, st, next, ws) <= 1e-8);
      st = next;
    }
  }

  SUBCASE("multiplier relation is exact regardless of inner accuracy") {
    auto st = init_state(p, s, oracle::randn(rng, 3), oracle::randn(rng, 3),
                         oracle::randn(rng, 3));
    StepWorkspace ws;
    InnerConfig inner;
    inner.max_inner = 1;  // deliberately truncated
    for (const auto alg : {Algorithm::Joint, Algorithm::Split}) {
      const auto next = step(alg, p, s, st, ws, inner);
      const auto c = coeffs_at(s, st.k, p.muF(), p.muG());
      const VectorXd rl = (next.lambda - st.lambda) / c.alpha -
                          c.beta * (p.A().apply(z_delta(next, s)) +
                                    p.B().apply(h_delta(next, s)) - p.b());
      CHECK(rl.norm() <= 1e-12);
      // a sloppy inner solve shows up in the residual at a comparable scale
      const double res = scheme_residual(p, s, alg, st, next, ws);
      CHECK(res <= std::max(1e-8, 10.0 * ws.inner_residual));
    }
  }
}

TEST_CASE("runner") {
  const auto p = case1_instance();
  const auto s = make_sched(2.0, 0.7, SequenceFamily::powerLaw(1.0, -1.0),
                            SequenceFamily::powerLaw(1.0, 1.0),
                            SequenceFamily::powerLaw(1.0, -0.5));
  const VectorXd y0 = vec3(-0.5, 0.5, 1);
  const VectorXd x0 = vec3(2 * -0.5, 3 * 0.5, 1);
  const auto probe = make_probe(p, s, {});

  SUBCASE("zero iterations produce only the initial row") {
    RunConfig rc;
    rc.alg = Algorithm::Split;
    rc.iterations = 0;
    const auto st = init_state(p, s, x0, y0, VectorXd::Zero(3));
    const auto rr = run(p, s, st, rc, probe);
    REQUIRE(rr.trace.rows.size() == 1);
    CHECK(rr.trace.rows[0].k == 1);
  }

  SUBCASE("stride samples plus first and last") {
    RunConfig rc;
    rc.alg = Algorithm::Split;
    rc.iterations = 10;
    rc.stride = 3;
    const auto st = init_state(p, s, x0, y0, VectorXd::Zero(3));
    const auto rr = run(p, s, st, rc, probe);
    std::vector<long> ks;
    for (const auto& r : rr.trace.rows) ks.push_back(r.k);
    CHECK(ks == std::vector<long>{1, 3, 6, 9, 11});
  }

  SUBCASE("identical configurations give bitwise identical traces") {
    RunConfig rc;
    rc.alg = Algorithm::Split;
    rc.iterations = 200;
    rc.stride = 10;
    rc.record_wall = false;
    const auto r1 = run(p, s, init_state(p, s, x0, y0, VectorXd::Zero(3)), rc, probe);
    const auto r2 = run(p, s, init_state(p, s, x0, y0, VectorXd::Zero(3)), rc, probe);
    CHECK(trace_to_csv(r1.trace) == trace_to_csv(r2.trace));
  }

  SUBCASE("schedule validation gate") {
    RunConfig rc;
    rc.alg = Algorithm::Joint;
    rc.iterations = 5;
    auto bad = s;
    bad.gamma = 1.0;
    bad.delta = 0.5;  // delta*gamma < 1
    CHECK_THROWS(run(p, bad, init_state(p, bad, x0, y0, VectorXd::Zero(3)), rc, probe));
    rc.validate = false;
    const auto rr = run(p, bad, init_state(p, bad, x0, y0, VectorXd::Zero(3)), rc, probe);
    CHECK(!rr.schedule_report.pass());
  }

  SUBCASE("feasibility budget short-circuits") {
    RunConfig rc;
    rc.alg = Algorithm::Split;
    rc.iterations = 100000;
    rc.stride = 50;
    rc.feas_tol = 1e-3;
    const auto rr = run(p, s, init_state(p, s, x0, y0, VectorXd::Zero(3)), rc, probe);
    CHECK(rr.state.k < 100001);
    CHECK(p.feasibility(rr.state.x, rr.state.y) <= 1e-3);
  }
}

TEST_CASE("strongly convex first block: scaled step differences decay") {
  std::mt19937_64 rng(34);
  const ProblemInstance p(ProxFunction::elasticNet(0.3, 0.4, 2), ProxFunction::l1(0.5, 2),
                          LinearOperator::identity(2),
                          LinearOperator::diagonal(-VectorXd::Ones(2).eval()),
                          VectorXd::Zero(2));
  const auto s = make_sched(2.0, 0.6, SequenceFamily::powerLaw(1.0, -1.0),
                            SequenceFamily::powerLaw(1.0, 1.0),
                            SequenceFamily::powerLaw(1.0, -3.0));
  auto st = init_state(p, s, oracle::randn(rng, 2), oracle::randn(rng, 2), VectorXd::Zero(2));
  StepWorkspace ws;
  InnerConfig inner;
  const long K = 2000;
  double at10 = 0.0, tail_max = 0.0;
  for (long k = 1; k <= K; ++k) {
    const auto next = step_joint(p, s, st, ws, inner);
    const double v = s.beta.at(st.k) * (next.x - st.x).squaredNorm();
    if (st.k == 10) at10 = v;
    if (st.k >= K / 2) tail_max = std::max(tail_max, v);
    st = next;
  }
  CHECK(tail_max <= std::max(at10, 1e-18));
}

TEST_CASE("algorithm names") {
  CHECK(algorithm_from_string("joint") == Algorithm::Joint);
  CHECK(algorithm_from_string("split") == Algorithm::Split);
  CHECK(algorithm_from_string("nonseparable") == Algorithm::Nonseparable);
  CHECK_THROWS(algorithm_from_string("foo"));
  CHECK(algorithm_name(Algorithm::Split) == "split");
}
