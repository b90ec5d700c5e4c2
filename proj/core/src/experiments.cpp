#include "pdsa/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "pdsa/baselines.hpp"
#include "pdsa/diagnostics.hpp"
#include "pdsa/solver.hpp"
#include "pdsa/trace.hpp"

namespace pdsa {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 applied to the counted stream position
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LadInstance gen_lad_instance(const LadConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("gen_lad_instance: dimensions");
  if (cfg.m >= cfg.n) throw std::invalid_argument("gen_lad_instance: requires m < n");
  if (cfg.lambda_l1 <= 0.0) throw std::invalid_argument("gen_lad_instance: lambda_l1");
  if (cfg.mu_l2 < 0.0) throw std::invalid_argument("gen_lad_instance: mu_l2");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0))
    throw std::invalid_argument("gen_lad_instance: density");
  if (cfg.noise_var <= 0.0) throw std::invalid_argument("gen_lad_instance: noise_var");

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const long m = cfg.m, n = cfg.n;

  MatrixXd M(m, n);
  for (long r = 0; r < m; ++r)
    for (long c = 0; c < n; ++c) M(r, c) = gauss(rng);

  if (cfg.correlated) {
    // Declared interpretation of "50% correlated columns": a random half of
    // the columns are replaced by a random partner column plus 10% noise,
    // before row normalization.
    std::vector<long> cols(static_cast<size_t>(n));
    for (long c = 0; c < n; ++c) cols[size_t(c)] = c;
    for (long i = 0; i < n - 1; ++i) {
      std::uniform_int_distribution<long> pick(i, n - 1);
      std::swap(cols[size_t(i)], cols[size_t(pick(rng))]);
    }
    const MatrixXd base = M;
    for (long i = 0; i < n / 2; ++i) {
      const long j = cols[size_t(i)];
      std::uniform_int_distribution<long> pick(0, n - 1);
      long partner = j;
      while (partner == j) partner = pick(rng);
      for (long r = 0; r < m; ++r) M(r, j) = base(r, partner) + 0.1 * gauss(rng);
    }
  }

  for (long r = 0; r < m; ++r) {
    const double norm = M.row(r).norm();
    if (norm <= 0.0) throw std::runtime_error("gen_lad_instance: degenerate row");
    M.row(r) /= norm;
  }

  const long nnz = long(std::ceil(cfg.density * double(n)));
  std::vector<long> pos(static_cast<size_t>(n));
  for (long c = 0; c < n; ++c) pos[size_t(c)] = c;
  for (long i = 0; i < nnz; ++i) {
    std::uniform_int_distribution<long> pick(i, n - 1);
    std::swap(pos[size_t(i)], pos[size_t(pick(rng))]);
  }
  VectorXd truth = VectorXd::Zero(n);
  for (long i = 0; i < nnz; ++i) truth[pos[size_t(i)]] = gauss(rng);

  VectorXd noise(m);
  const double sd = std::sqrt(cfg.noise_var);
  for (long r = 0; r < m; ++r) noise[r] = sd * gauss(rng);

  VectorXd b_obs = M * truth + noise;

  ProxFunction f = ProxFunction::shiftedL1(1.0, b_obs);
  ProxFunction g = cfg.mu_l2 > 0.0 ? ProxFunction::elasticNet(cfg.lambda_l1, cfg.mu_l2, n)
                                   : ProxFunction::l1(cfg.lambda_l1, n);
  LadInstance out{ProblemInstance(std::move(f), std::move(g), LinearOperator::identity(m),
                                  LinearOperator::dense(-M), VectorXd::Zero(m)),
                  std::move(truth), std::move(b_obs)};
  return out;
}

ProblemInstance gen_l1l1_instance(const L1L1Config& cfg) {
  if (cfg.p == 0.0 || cfg.q == 0.0 || cfg.r == 0.0)
    throw std::invalid_argument("gen_l1l1_instance: diagonal entries must be nonzero");
  if (cfg.lambda_l1 <= 0.0) throw std::invalid_argument("gen_l1l1_instance: lambda_l1");
  VectorXd diag(3), shift(3);
  diag << -cfg.p, -cfg.q, -cfg.r;
  shift << cfg.d, cfg.d, cfg.d;
  return ProblemInstance(ProxFunction::shiftedL1(1.0, shift),
                         ProxFunction::l1(cfg.lambda_l1, 3), LinearOperator::identity(3),
                         LinearOperator::diagonal(diag), VectorXd::Zero(3));
}

namespace {

VectorXd json_vector(const json& j) {
  VectorXd v(j.size());
  Index i = 0;
  for (const auto& e : j) v[i++] = e.get<double>();
  return v;
}

json vector_json(const VectorXd& v) {
  json j = json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

struct InstanceData {
  std::string name;
  std::string type;
  std::uint64_t seed = 0;
  std::unique_ptr<ProblemInstance> problem;
  std::optional<double> phi_star;  // analytically known value, when configured
  std::optional<std::pair<VectorXd, VectorXd>> dist_target;
  std::optional<ReferenceResult> oracle;
  json meta;
};

// Schedules in configs may reference instance quantities; resolve the special
// forms here so the schedule module stays self-contained.
//   beta  {"form":"corollary32"}        -> mu_g k^2 / (3 ||B||^2)
//   eps   {"form":"inv_alpha_beta_k3"}  -> 1 / (alpha_k beta_k k^3)
SequenceFamily resolve_sequence(const json& j, const char* role, const ProblemInstance& p,
                                const SequenceFamily* alpha, const SequenceFamily* beta,
                                long horizon) {
  const std::string form = j.at("form").get<std::string>();
  if (form == "corollary32") {
    const double mu_g = p.muG();
    if (mu_g <= 0.0)
      throw std::invalid_argument(std::string("schedule ") + role +
                                  ": corollary32 needs a strongly convex second block");
    const double nb = p.B().norm();
    return SequenceFamily::scaledSquare(mu_g / (3.0 * nb * nb));
  }
  if (form == "inv_alpha_beta_k3") {
    if (alpha == nullptr || beta == nullptr)
      throw std::invalid_argument("schedule epsilon: inv_alpha_beta_k3 needs alpha and beta");
    auto power_of = [](const SequenceFamily& f, double& c, double& pw) {
      switch (f.form) {
        case SequenceFamily::Form::PowerLaw: c = f.c, pw = f.p; return true;
        case SequenceFamily::Form::Constant: c = f.c, pw = 0.0; return true;
        case SequenceFamily::Form::ScaledSquare: c = f.c, pw = 2.0; return true;
        default: return false;
      }
    };
    double ca, pa, cb, pb;
    if (power_of(*alpha, ca, pa) && power_of(*beta, cb, pb))
      return SequenceFamily::powerLaw(1.0 / (ca * cb), -(pa + pb + 3.0));
    std::vector<double> table(static_cast<size_t>(std::max(horizon, 2L)));
    for (long k = 1; k <= long(table.size()); ++k) {
      const double denom = alpha->at(k) * beta->at(k) * double(k) * double(k) * double(k);
      table[size_t(k - 1)] = 1.0 / denom;
    }
    return SequenceFamily::custom(std::move(table));
  }
  return sequenceFromJson(j);
}

ParameterSchedule resolve_schedule(const json& j, const ProblemInstance& p, long horizon) {
  ParameterSchedule s;
  s.gamma = j.at("gamma").get<double>();
  s.delta = j.at("delta").get<double>();
  if (s.gamma <= 0.0 || s.delta <= 0.0)
    throw std::invalid_argument("schedule: gamma and delta must be positive");
  s.alpha = resolve_sequence(j.at("alpha"), "alpha", p, nullptr, nullptr, horizon);
  s.beta = resolve_sequence(j.at("beta"), "beta", p, &s.alpha, nullptr, horizon);
  s.epsilon = resolve_sequence(j.at("epsilon"), "epsilon", p, &s.alpha, &s.beta, horizon);
  return s;
}

VectorXd resolve_init(const json& init, const char* key, Index dim, const ProblemInstance& p,
                      const VectorXd* y0) {
  if (!init.contains(key)) return VectorXd::Zero(dim);
  const json& j = init.at(key);
  if (j.is_string()) {
    const std::string tag = j.get<std::string>();
    if (tag == "zero") return VectorXd::Zero(dim);
    if (tag == "minus_B_y0") {
      if (y0 == nullptr) throw std::invalid_argument("init: minus_B_y0 needs y0");
      return -p.B().apply(*y0);
    }
    throw std::invalid_argument(std::string("init.") + key + ": unknown tag '" + tag + "'");
  }
  VectorXd v = json_vector(j);
  if (v.size() != dim) throw std::invalid_argument(std::string("init.") + key + ": dimension");
  return v;
}

json fit_json(const std::optional<RateFit>& f) {
  if (!f) return json{{"status", "insufficient_data"}};
  return json{{"slope", f->slope}, {"r2", f->r2}, {"points", f->n}};
}

json report_json(const ValidationReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues)
    issues.push_back({{"condition", i.condition}, {"k", i.first_k}, {"lhs", i.lhs}, {"rhs", i.rhs}});
  return json{{"pass", r.pass()}, {"summary", r.summary()}, {"issues", issues}};
}

struct CellSpec {
  size_t instance_index = 0;
  json alg;
  std::string label;
  std::string csv_name;
  std::uint64_t seed = 0;
};

json run_solver_cell(const InstanceData& inst, const CellSpec& cell, const std::string& csv_path) {
  const ProblemInstance& p = *inst.problem;
  const json& a = cell.alg;
  const long iterations = a.value("iterations", 1000L);
  const long stride = a.value("stride", 1L);

  RunConfig rc;
  rc.alg = algorithm_from_string(a.at("name").get<std::string>());
  rc.iterations = iterations;
  rc.stride = stride;
  rc.inner.tol_floor = a.value("inner_tol", 1e-8);
  rc.inner.max_inner = a.value("max_inner", 5000L);
  rc.record_wall = a.value("record_wall", true);
  rc.validate = a.value("validate", true);
  if (a.contains("feas_tol")) rc.feas_tol = a.at("feas_tol").get<double>();

  const ParameterSchedule sched = resolve_schedule(a.at("schedule"), p, iterations + 1);

  const json init = a.value("init", json::object());
  VectorXd y0 = resolve_init(init, "y0", p.ny(), p, nullptr);
  VectorXd x0 = resolve_init(init, "x0", p.nx(), p, &y0);
  VectorXd l0 = resolve_init(init, "lambda0", p.m(), p, nullptr);
  SolverState st = init_state(p, sched, std::move(x0), std::move(y0), std::move(l0));

  ProbeOptions po;
  long clamps = 0;
  po.gap_clamp_count = &clamps;
  if (inst.oracle) {
    SaddlePoint sp = inst.oracle->point;
    if (inst.phi_star) sp.phi = *inst.phi_star;
    po.reference = std::move(sp);
    po.split_lyapunov = rc.alg == Algorithm::Split;
  }
  po.dist_target = inst.dist_target;
  const ProbeFn probe = make_probe(p, sched, std::move(po));

  RunResult rr = run(p, sched, std::move(st), rc, probe);
  write_trace_csv(rr.trace, csv_path);

  json cj;
  cj["iterations"] = iterations;
  cj["wall_ms"] = rr.wall_ms;
  cj["schedule_report"] = report_json(rr.schedule_report);
  if (a.contains("epsilon_mode")) {
    const std::string mode = a.at("epsilon_mode").get<std::string>();
    cj["epsilon_report"] = report_json(validate_epsilon_conditions(
        sched, iterations + 1, mode == "strong" ? EpsilonMode::Strong : EpsilonMode::Rate));
  }
  cj["gap_clamps"] = clamps;

  const SolverState& fin = rr.state;
  json finj;
  finj["k"] = fin.k;
  finj["objective"] = p.objective(fin.x, fin.y);
  finj["feasibility"] = p.feasibility(fin.x, fin.y);
  finj["iterate_norm"] = std::sqrt(fin.x.squaredNorm() + fin.y.squaredNorm());
  if (po.reference)
    finj["objective_residual"] = std::abs(p.objective(fin.x, fin.y) - po.reference->phi);
  if (inst.dist_target)
    finj["dist_to_point"] = std::sqrt((fin.x - inst.dist_target->first).squaredNorm() +
                                      (fin.y - inst.dist_target->second).squaredNorm());
  cj["final"] = std::move(finj);

  long klo = std::max(10L, iterations / 100), khi = iterations;
  if (a.contains("fit_window")) {
    klo = a.at("fit_window").at(0).get<long>();
    khi = a.at("fit_window").at(1).get<long>();
  }
  cj["fit_window"] = {klo, khi};
  cj["fits"] = {{"feasibility", fit_json(fit_rate(rr.trace, "feasibility", klo, khi))},
                {"objective_residual",
                 fit_json(fit_rate(rr.trace, "objective_residual", klo, khi))}};
  return cj;
}

json run_baseline_cell(const InstanceData& inst, const CellSpec& cell,
                       const std::string& csv_path) {
  const ProblemInstance& p = *inst.problem;
  const json& a = cell.alg;
  const std::string name = a.at("name").get<std::string>();
  const long iterations = a.value("iterations", 1000L);
  const long stride = a.value("stride", 1L);
  const double rho = a.value("rho", 1.0);
  const bool record_wall = a.value("record_wall", true);

  BaselineConfig bc;
  bc.inner_tol = a.value("inner_tol", 1e-10);
  bc.max_inner = a.value("max_inner", 20000L);

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  const std::optional<double> phi =
      inst.phi_star ? inst.phi_star
                    : (inst.oracle ? std::optional<double>(inst.oracle->point.phi) : std::nullopt);

  IterationTrace trace;
  auto record = [&](long k, const VectorXd& x, const VectorXd& y) {
    TraceRow row;
    row.k = k;
    row.feasibility = p.feasibility(x, y);
    row.iterate_norm = std::sqrt(x.squaredNorm() + y.squaredNorm());
    if (phi) row.objective_residual = std::abs(p.objective(x, y) - *phi);
    if (inst.dist_target)
      row.dist_to_point = std::sqrt((x - inst.dist_target->first).squaredNorm() +
                                    (y - inst.dist_target->second).squaredNorm());
    if (record_wall) row.wall_ms = elapsed_ms();
    trace.rows.push_back(std::move(row));
  };

  VectorXd fx, fy;
  if (name == "admm") {
    AdmmState st = admm_init(p, VectorXd::Zero(p.nx()), VectorXd::Zero(p.ny()));
    record(0, st.x, st.y);
    for (long t = 1; t <= iterations; ++t) {
      admm_step(p, rho, st, bc);
      if (t % stride == 0 || t == iterations) record(t, st.x, st.y);
    }
    fx = st.x;
    fy = st.y;
  } else {
    const CpProblem cp = cp_encode(p);
    CpState st = cp_init(cp, VectorXd::Zero(p.ny()), rho);
    const bool accel = name == "cp_scvx";
    const double gamma_cp = a.value("gamma_cp", p.muG());
    record(0, cp_primal_x(cp, st), st.y);
    for (long t = 1; t <= iterations; ++t) {
      if (accel)
        cp_scvx_step(cp, st, gamma_cp);
      else
        cp_step(cp, st);
      if (t % stride == 0 || t == iterations) record(t, cp_primal_x(cp, st), st.y);
    }
    fx = cp_primal_x(cp, st);
    fy = st.y;
  }
  write_trace_csv(trace, csv_path);

  json cj;
  cj["iterations"] = iterations;
  cj["wall_ms"] = elapsed_ms();
  json finj;
  finj["k"] = iterations;
  finj["objective"] = p.objective(fx, fy);
  finj["feasibility"] = p.feasibility(fx, fy);
  finj["iterate_norm"] = std::sqrt(fx.squaredNorm() + fy.squaredNorm());
  if (phi) finj["objective_residual"] = std::abs(p.objective(fx, fy) - *phi);
  cj["final"] = std::move(finj);
  return cj;
}

}  // namespace

namespace {

std::vector<InstanceData> build_instances(const json& config, std::uint64_t seed,
                                          const std::string& base_dir, bool with_oracle) {
  std::vector<InstanceData> instances;
  const json insts = config.value("instances", json::array());
  for (size_t i = 0; i < insts.size(); ++i) {
    const json& ij = insts[i];
    InstanceData d;
    d.type = ij.value("type", std::string("lad"));
    d.name = ij.value("name", d.type + std::to_string(i));
    d.seed = ij.contains("seed") ? ij.at("seed").get<std::uint64_t>() : split_seed(seed, i);
    if (d.type == "lad") {
      LadConfig lc;
      lc.m = ij.value("m", 60L);
      lc.n = ij.value("n", 600L);
      lc.lambda_l1 = ij.value("lambda_l1", 0.2);
      lc.mu_l2 = ij.value("mu_l2", 0.0);
      lc.density = ij.value("density", 0.1);
      lc.noise_var = ij.value("noise_var", 1e-4);
      lc.correlated = ij.value("correlated", false);
      lc.seed = d.seed;
      auto gen = gen_lad_instance(lc);
      d.problem = std::make_unique<ProblemInstance>(std::move(gen.instance));
      d.meta["ground_truth_nnz"] = long((gen.ground_truth.array() != 0.0).count());
      if (lc.correlated)
        d.meta["correlated_note"] =
            "correlated columns: a random half of the columns replaced by a random partner "
            "column plus 0.1x standard normal noise, prior to row normalization (declared "
            "interpretation; the paper does not define the construction)";
    } else if (d.type == "l1l1") {
      L1L1Config lc;
      lc.p = ij.value("p", 2.0);
      lc.q = ij.value("q", 3.0);
      lc.r = ij.value("r", 1.0);
      lc.lambda_l1 = ij.value("lambda_l1", 3.0);
      lc.d = ij.value("d", 2.0);
      d.problem = std::make_unique<ProblemInstance>(gen_l1l1_instance(lc));
    } else if (d.type == "file") {
      fs::path f = ij.at("path").get<std::string>();
      if (f.is_relative()) f = fs::path(base_dir) / f;
      std::ifstream in(f);
      if (!in) throw std::invalid_argument("instances[" + std::to_string(i) +
                                           "].path: cannot open " + f.string());
      json pj;
      in >> pj;
      d.problem = std::make_unique<ProblemInstance>(ProblemInstance::fromJson(pj));
    } else {
      throw std::invalid_argument("instances[" + std::to_string(i) + "].type: unknown '" +
                                  d.type + "'");
    }
    if (ij.contains("phi_star")) d.phi_star = ij.at("phi_star").get<double>();
    if (ij.contains("dist_target")) {
      const json& dt = ij.at("dist_target");
      if (dt.is_string() && dt.get<std::string>() == "zero")
        d.dist_target = {VectorXd::Zero(d.problem->nx()), VectorXd::Zero(d.problem->ny())};
      else
        d.dist_target = {json_vector(dt.at("x")), json_vector(dt.at("y"))};
    }
    if (with_oracle && ij.value("oracle", true)) {
      ReferenceOptions ro;
      ro.kkt_tol = ij.value("oracle_tol", config.value("oracle_tol", 1e-8));
      ro.rho = ij.value("oracle_rho", 1.0);
      ro.max_iters = ij.value("oracle_max_iters", 200000L);
      ro.inner.inner_tol = std::min(1e-10, ro.kkt_tol * 1e-2);
      d.oracle = reference_solution(*d.problem, ro);
    }
    instances.push_back(std::move(d));
  }
  return instances;
}

}  // namespace

json run_experiment(const json& config, const ExperimentOptions& opt) {
  if (!config.is_object()) throw std::invalid_argument("config: expected a JSON object");
  const std::uint64_t seed =
      opt.has_seed_override ? opt.seed_override : config.value("seed", std::uint64_t(0));

  fs::create_directories(opt.out_dir);

  std::vector<InstanceData> instances = build_instances(config, seed, opt.base_dir, true);

  // --- cells ---
  const json algs = config.value("algorithms", json::array());
  std::vector<CellSpec> cells;
  std::set<std::string> used_names;
  for (size_t ii = 0; ii < instances.size(); ++ii) {
    for (size_t ai = 0; ai < algs.size(); ++ai) {
      const json& a = algs[ai];
      const std::string name = a.at("name").get<std::string>();
      static const std::set<std::string> known = {"joint", "split",    "nonseparable",
                                                  "admm",  "cp",       "cp_scvx"};
      if (!known.count(name))
        throw std::invalid_argument("algorithms[" + std::to_string(ai) + "].name: unknown '" +
                                    name + "'");
      CellSpec c;
      c.instance_index = ii;
      c.alg = a;
      c.label = a.value("label", name);
      std::string base = instances[ii].name + "_" + c.label;
      std::string candidate = base;
      for (int dup = 2; used_names.count(candidate); ++dup)
        candidate = base + "_" + std::to_string(dup);
      used_names.insert(candidate);
      c.csv_name = candidate + ".csv";
      c.seed = split_seed(seed, 1000 + cells.size());
      cells.push_back(std::move(c));
    }
  }

  std::vector<json> cell_results(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const CellSpec& c = cells[i];
      const InstanceData& inst = instances[c.instance_index];
      const std::string csv_path = (fs::path(opt.out_dir) / c.csv_name).string();
      json cj;
      cj["instance"] = inst.name;
      cj["algorithm"] = c.alg.at("name").get<std::string>();
      cj["label"] = c.label;
      cj["csv"] = c.csv_name;
      cj["seed"] = c.seed;
      try {
        const std::string name = c.alg.at("name").get<std::string>();
        json body = (name == "joint" || name == "split" || name == "nonseparable")
                        ? run_solver_cell(inst, c, csv_path)
                        : run_baseline_cell(inst, c, csv_path);
        cj.update(body);
        cj["status"] = "ok";
      } catch (const std::exception& e) {
        cj["status"] = "failed";
        cj["error"] = e.what();
      }
      cell_results[i] = std::move(cj);
    }
  };
  const int nthreads = std::max(1, std::min<int>(opt.threads, int(cells.size())));
  if (nthreads <= 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  json summary;
  summary["seed"] = seed;
  json inst_summaries = json::array();
  for (const auto& d : instances) {
    json ij;
    ij["name"] = d.name;
    ij["type"] = d.type;
    ij["seed"] = d.seed;
    if (d.phi_star) ij["phi_star"] = *d.phi_star;
    if (d.oracle) {
      ij["oracle"] = {{"kkt_residual", d.oracle->kkt},
                      {"objective", d.oracle->point.phi},
                      {"iterations", d.oracle->iterations},
                      {"converged", d.oracle->converged}};
      if (d.phi_star) ij["oracle"]["objective_error"] = std::abs(d.oracle->point.phi - *d.phi_star);
    }
    if (!d.meta.is_null()) ij["meta"] = d.meta;
    inst_summaries.push_back(std::move(ij));
  }
  summary["instances"] = std::move(inst_summaries);
  summary["cells"] = cell_results;
  long failed = 0;
  for (const auto& c : cell_results)
    if (c.value("status", "") != "ok") ++failed;
  summary["failed_cells"] = failed;

  std::ofstream out(fs::path(opt.out_dir) / "summary.json");
  if (!out) throw std::runtime_error("run_experiment: cannot write summary.json");
  out << summary.dump(2) << "\n";
  return summary;
}

json validate_config(const json& config, long horizon, const std::string& base_dir) {
  if (!config.is_object()) throw std::invalid_argument("config: expected a JSON object");
  if (horizon < 2) throw std::invalid_argument("validate_config: horizon must be >= 2");
  const std::uint64_t seed = config.value("seed", std::uint64_t(0));
  std::vector<InstanceData> instances = build_instances(config, seed, base_dir, false);
  const json algs = config.value("algorithms", json::array());

  json reports = json::array();
  bool all_pass = true;
  for (const auto& inst : instances) {
    for (size_t ai = 0; ai < algs.size(); ++ai) {
      const json& a = algs[ai];
      const std::string name = a.at("name").get<std::string>();
      if (name != "joint" && name != "split" && name != "nonseparable") continue;
      json rj;
      rj["instance"] = inst.name;
      rj["algorithm"] = name;
      try {
        const ParameterSchedule s = resolve_schedule(a.at("schedule"), *inst.problem, horizon);
        const ValidationReport rep =
            name == "split"
                ? validate_assumption2(s, inst.problem->B().norm(), inst.problem->muG(), horizon)
                : validate_assumption1(s, horizon);
        rj["assumption_report"] = report_json(rep);
        bool pass = rep.pass();
        if (a.contains("epsilon_mode")) {
          const std::string mode = a.at("epsilon_mode").get<std::string>();
          const ValidationReport er = validate_epsilon_conditions(
              s, horizon, mode == "strong" ? EpsilonMode::Strong : EpsilonMode::Rate);
          rj["epsilon_report"] = report_json(er);
          pass = pass && er.pass();
        }
        rj["pass"] = pass;
        all_pass = all_pass && pass;
      } catch (const std::exception& e) {
        rj["pass"] = false;
        rj["error"] = e.what();
        all_pass = false;
      }
      reports.push_back(std::move(rj));
    }
  }
  return json{{"all_pass", all_pass}, {"reports", reports}};
}

}  // namespace pdsa
