#include <benchmark/benchmark.h>

#include <random>

#include "pdsa/baselines.hpp"
#include "pdsa/experiments.hpp"
#include "pdsa/solver.hpp"

namespace {

pdsa::LadInstance make_lad(double mu) {
  pdsa::LadConfig cfg;
  cfg.m = 60;
  cfg.n = 600;
  cfg.mu_l2 = mu;
  cfg.seed = 7;
  return pdsa::gen_lad_instance(cfg);
}

void BM_ProxL1(benchmark::State& state) {
  const auto f = pdsa::ProxFunction::l1(0.2, 600);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  pdsa::VectorXd v(600);
  for (auto& e : v) e = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(f.prox(v, 3.0));
}
BENCHMARK(BM_ProxL1);

void BM_SplitStep(benchmark::State& state) {
  const auto lad = make_lad(0.0);
  pdsa::ParameterSchedule s;
  s.gamma = 2.0;
  s.delta = 0.6;
  s.alpha = pdsa::SequenceFamily::powerLaw(1.0, -1.0);
  s.beta = pdsa::SequenceFamily::powerLaw(1.0, 1.0);
  s.epsilon = pdsa::SequenceFamily::powerLaw(1.0, -3.0);
  auto st = pdsa::init_state(lad.instance, s, pdsa::VectorXd::Zero(60),
                             pdsa::VectorXd::Zero(600), pdsa::VectorXd::Zero(60));
  pdsa::StepWorkspace ws;
  pdsa::InnerConfig inner;
  for (auto _ : state) st = pdsa::step_split(lad.instance, s, st, ws, inner);
}
BENCHMARK(BM_SplitStep);

void BM_AdmmStep(benchmark::State& state) {
  const auto lad = make_lad(0.0);
  auto st = pdsa::admm_init(lad.instance, pdsa::VectorXd::Zero(60), pdsa::VectorXd::Zero(600));
  pdsa::BaselineConfig cfg;
  cfg.inner_tol = 1e-8;
  for (auto _ : state) pdsa::admm_step(lad.instance, 1.0, st, cfg);
}
BENCHMARK(BM_AdmmStep);

}  // namespace

BENCHMARK_MAIN();
