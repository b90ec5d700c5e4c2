#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "pdsa/problem.hpp"

namespace pdsa {

/// LAD regression instance generator (least absolute deviations with l1 or
/// elastic-net regularization), reformulated as
///   min ||x - b_obs||_1 + lambda ||y||_1 (+ mu/2 ||y||^2)  s.t.  x - M y = 0.
struct LadConfig {
  long m = 60;
  long n = 600;
  double lambda_l1 = 0.2;
  double mu_l2 = 0.0;  // 0 => LAD-LASSO, > 0 => LAD-Elastic-Net
  double density = 0.1;
  double noise_var = 1e-4;
  bool correlated = false;
  std::uint64_t seed = 0;
};

struct LadInstance {
  ProblemInstance instance;
  VectorXd ground_truth;
  VectorXd observations;  // b_obs, also the shift inside f
};

LadInstance gen_lad_instance(const LadConfig& cfg);

/// Three-dimensional l1-l1 instance:
///   min lambda ||y||_1 + ||x - (d,d,d)||_1  s.t.  x - diag(p,q,r) y = 0.
struct L1L1Config {
  double p = 2.0, q = 3.0, r = 1.0;
  double lambda_l1 = 3.0;
  double d = 2.0;
};

ProblemInstance gen_l1l1_instance(const L1L1Config& cfg);

/// Counted seed derivation (splitmix64): all cell randomness flows from the
/// one top-level seed.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

struct ExperimentOptions {
  std::string out_dir = ".";
  std::string base_dir = ".";  // relative instance-file paths resolve against this
  int threads = 1;
  bool has_seed_override = false;
  std::uint64_t seed_override = 0;
};

/// Executes every (instance, algorithm) cell of the config, writing one CSV
/// per cell plus the returned summary (also written as summary.json).
/// Cell failures are recorded per cell; config errors throw.
nlohmann::json run_experiment(const nlohmann::json& config, const ExperimentOptions& opt);

/// Schedule validation for every (instance, solver-algorithm) cell of the
/// config over the given horizon, without running anything.
nlohmann::json validate_config(const nlohmann::json& config, long horizon,
                               const std::string& base_dir);

}  // namespace pdsa
