// Experiment CLI: run experiment configs, validate schedules, fit rates,
// generate instances.
//
// Exit codes: 0 ok, 2 config/usage error, 3 cell failure, 4 insufficient data.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "pdsa/diagnostics.hpp"
#include "pdsa/experiments.hpp"
#include "pdsa/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCellFailure = 3;
constexpr int kExitInsufficientData = 4;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }
  return j;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads,
            bool has_seed, std::uint64_t seed) {
  json config;
  pdsa::ExperimentOptions opt;
  opt.out_dir = out_dir;
  opt.base_dir = fs::path(config_path).parent_path().string();
  if (opt.base_dir.empty()) opt.base_dir = ".";
  opt.threads = threads;
  opt.has_seed_override = has_seed;
  opt.seed_override = seed;

  json summary;
  try {
    config = load_config(config_path);
    summary = pdsa::run_experiment(config, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  for (const auto& cell : summary.value("cells", json::array())) {
    std::cout << cell.value("instance", "?") << " / " << cell.value("label", "?") << ": "
              << cell.value("status", "?");
    if (cell.contains("error")) std::cout << " (" << cell.at("error").get<std::string>() << ")";
    std::cout << "\n";
  }
  const long failed = summary.value("failed_cells", 0L);
  if (failed > 0) {
    std::cerr << failed << " cell(s) failed; see " << out_dir << "/summary.json\n";
    return kExitCellFailure;
  }
  return 0;
}

int cmd_validate(const std::string& config_path, long horizon) {
  json report;
  try {
    const json config = load_config(config_path);
    std::string base = fs::path(config_path).parent_path().string();
    if (base.empty()) base = ".";
    report = pdsa::validate_config(config, horizon, base);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  for (const auto& r : report.value("reports", json::array())) {
    std::cout << r.value("instance", "?") << " / " << r.value("algorithm", "?") << ": "
              << (r.value("pass", false) ? "pass" : "FAIL");
    if (r.contains("error")) {
      std::cout << " (" << r.at("error").get<std::string>() << ")";
    } else {
      const auto& ar = r.at("assumption_report");
      if (!ar.value("pass", false)) std::cout << " " << ar.value("summary", "");
      if (r.contains("epsilon_report") && !r.at("epsilon_report").value("pass", false))
        std::cout << " epsilon: " << r.at("epsilon_report").value("summary", "");
    }
    std::cout << "\n";
  }
  return report.value("all_pass", false) ? 0 : 1;
}

int cmd_rate(const std::string& csv_path, const std::string& field, long from, long to) {
  pdsa::IterationTrace trace;
  try {
    trace = pdsa::read_trace_csv(csv_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::optional<pdsa::RateFit> fit;
  try {
    fit = pdsa::fit_rate(trace, field, from, to);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!fit) {
    std::cerr << "insufficient data: fewer than 10 positive rows of " << field << " in ["
              << from << ", " << to << "]\n";
    return kExitInsufficientData;
  }
  std::printf("slope %.6g r2 %.6g points %ld\n", fit->slope, fit->r2, fit->n);
  return 0;
}

struct GenParams {
  std::string type = "lad";
  std::string out = "instance.json";
  std::uint64_t seed = 0;
  pdsa::LadConfig lad;
  pdsa::L1L1Config l1l1;
};

int cmd_gen(const GenParams& gp) {
  try {
    json doc;
    if (gp.type == "lad") {
      pdsa::LadConfig lc = gp.lad;
      lc.seed = gp.seed;
      doc = pdsa::gen_lad_instance(lc).instance.toJson();
    } else if (gp.type == "l1l1") {
      doc = pdsa::gen_l1l1_instance(gp.l1l1).toJson();
    } else {
      throw std::invalid_argument("unknown instance type '" + gp.type + "'");
    }
    std::ofstream out(gp.out);
    if (!out) throw std::runtime_error("cannot write " + gp.out);
    out << doc.dump(2) << "\n";
    std::cout << gp.out << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primal-dual solver experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", csv_path, field = "feasibility";
  int threads = 1;
  long horizon = 1000, from = 1, to = 1000000000L;
  std::uint64_t seed = 0;
  bool has_seed = false;

  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--threads", threads, "cell parallelism");
  run->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    has_seed = true;
  });

  auto* validate = app.add_subcommand("validate", "check schedules against the assumptions");
  validate->add_option("--config", config_path, "experiment config (JSON)")->required();
  validate->add_option("--horizon", horizon, "validation horizon K");

  auto* rate = app.add_subcommand("rate", "log-log rate fit over a trace CSV");
  rate->add_option("csv", csv_path, "trace CSV path")->required();
  rate->add_option("--field", field, "column to fit");
  rate->add_option("--from", from, "window start (k)");
  rate->add_option("--to", to, "window end (k)");

  GenParams gp;
  auto* gen = app.add_subcommand("gen", "write a problem-instance document");
  gen->add_option("--type", gp.type, "lad | l1l1");
  gen->add_option("--out", gp.out, "output file");
  gen->add_option("--seed", gp.seed, "generator seed");
  gen->add_option("--m", gp.lad.m, "rows (lad)");
  gen->add_option("--n", gp.lad.n, "columns (lad)");
  gen->add_option("--lambda", gp.lad.lambda_l1, "l1 weight (lad)");
  gen->add_option("--mu", gp.lad.mu_l2, "l2 weight (lad)");
  gen->add_option("--density", gp.lad.density, "ground-truth density (lad)");
  gen->add_option("--noise-var", gp.lad.noise_var, "noise variance (lad)");
  gen->add_flag("--correlated", gp.lad.correlated, "correlated columns (lad)");
  gen->add_option("--p", gp.l1l1.p, "diagonal p (l1l1)");
  gen->add_option("--q", gp.l1l1.q, "diagonal q (l1l1)");
  gen->add_option("--r", gp.l1l1.r, "diagonal r (l1l1)");
  gen->add_option("--l1", gp.l1l1.lambda_l1, "l1 weight (l1l1)");
  gen->add_option("--d", gp.l1l1.d, "data entry d (l1l1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir, threads, has_seed, seed);
  if (validate->parsed()) return cmd_validate(config_path, horizon);
  if (rate->parsed()) return cmd_rate(csv_path, field, from, to);
  if (gen->parsed()) return cmd_gen(gp);
  return kExitConfig;
}
