#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#ifndef PDSA_CLI_PATH
#error "PDSA_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = std::string(PDSA_CLI_PATH) + " " + args;
  if (!capture.empty())
    cmd += " > " + capture.string() + " 2>&1";
  else
    cmd += " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("pdsa_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

json powerlaw(double c, double p) { return json{{"form", "powerlaw"}, {"c", c}, {"p", p}}; }

json small_config(long iterations) {
  json cfg;
  cfg["seed"] = 3;
  cfg["instances"] =
      json::array({json{{"type", "l1l1"}, {"name", "diag"}, {"phi_star", 6.0}}});
  json alg;
  alg["name"] = "split";
  alg["iterations"] = iterations;
  alg["record_wall"] = false;
  alg["schedule"] = json{{"gamma", 2.0},
                         {"delta", 0.7},
                         {"alpha", powerlaw(1.0, -1.0)},
                         {"beta", powerlaw(1.0, 1.0)},
                         {"epsilon", powerlaw(1.0, -0.5)}};
  cfg["algorithms"] = json::array({alg});
  return cfg;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2);
}

void write_powerlaw_csv(const fs::path& p, double power, long n) {
  std::ofstream out(p);
  out << "k,objective_residual,feasibility,lagrangian_gap,iterate_norm,dist_to_point,energy,"
         "inner_residual,wall_ms\n";
  for (long k = 1; k <= n; ++k)
    out << k << ",," << std::pow(double(k), power) << ",,,,,,\n";
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("bogus") == 2);
  CHECK(run_cli("run --config /nonexistent/config.json") == 2);
}

TEST_CASE("run executes a config and reports cell status") {
  const fs::path dir = fresh_dir("run");
  write_json(dir / "cfg.json", small_config(100));
  const fs::path log = dir / "log.txt";
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string(),
                log) == 0);
  CHECK(fs::exists(dir / "out" / "diag_split.csv"));
  CHECK(fs::exists(dir / "out" / "summary.json"));
  CHECK(read_file(log).find("diag / split: ok") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run rejects an unknown algorithm with a named field") {
  const fs::path dir = fresh_dir("badalg");
  json cfg = small_config(10);
  cfg["algorithms"][0]["name"] = "foo";
  write_json(dir / "cfg.json", cfg);
  const fs::path log = dir / "log.txt";
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                    (dir / "out").string(),
                log) == 2);
  CHECK(read_file(log).find("algorithms[0].name") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run reports failing cells with a dedicated exit code") {
  const fs::path dir = fresh_dir("cellfail");
  json cfg = small_config(10);
  cfg["algorithms"][0]["schedule"]["delta"] = 0.1;  // fails validation at run time
  write_json(dir / "cfg.json", cfg);
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "out").string()) == 3);
  fs::remove_all(dir);
}

TEST_CASE("validate distinguishes admissible and inadmissible schedules") {
  const fs::path dir = fresh_dir("validate");
  write_json(dir / "good.json", small_config(10));
  json bad = small_config(10);
  bad["algorithms"][0]["schedule"]["delta"] = 0.1;  // delta gamma < 1
  write_json(dir / "bad.json", bad);
  const fs::path log = dir / "log.txt";
  CHECK(run_cli("validate --config " + (dir / "good.json").string() + " --horizon 500") == 0);
  CHECK(run_cli("validate --config " + (dir / "bad.json").string() + " --horizon 500", log) == 1);
  CHECK(read_file(log).find("FAIL") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rate fits a synthetic power-law trace") {
  const fs::path dir = fresh_dir("rate");
  write_powerlaw_csv(dir / "t.csv", -1.0, 400);
  const fs::path log = dir / "log.txt";
  CHECK(run_cli("rate " + (dir / "t.csv").string() + " --field feasibility --from 1 --to 400",
                log) == 0);
  const std::string out = read_file(log);
  const auto pos = out.find("slope ");
  REQUIRE(pos != std::string::npos);
  const double slope = std::stod(out.substr(pos + 6));
  CHECK(std::abs(slope + 1.0) <= 1e-6);
  fs::remove_all(dir);
}

TEST_CASE("rate reports insufficient data") {
  const fs::path dir = fresh_dir("rate4");
  SUBCASE("all zeros") {
    write_powerlaw_csv(dir / "z.csv", -1.0, 100);
    // overwrite with zeros in the fitted column
    {
      std::ofstream out(dir / "z.csv");
      out << "k,objective_residual,feasibility,lagrangian_gap,iterate_norm,dist_to_point,"
             "energy,inner_residual,wall_ms\n";
      for (long k = 1; k <= 100; ++k) out << k << ",,0,,,,,,\n";
    }
    CHECK(run_cli("rate " + (dir / "z.csv").string() + " --field feasibility") == 4);
  }
  SUBCASE("window too narrow") {
    write_powerlaw_csv(dir / "t.csv", -1.0, 100);
    CHECK(run_cli("rate " + (dir / "t.csv").string() + " --from 50 --to 55") == 4);
  }
  SUBCASE("missing file and unknown field are config errors") {
    write_powerlaw_csv(dir / "t.csv", -1.0, 100);
    CHECK(run_cli("rate " + (dir / "missing.csv").string()) == 2);
    CHECK(run_cli("rate " + (dir / "t.csv").string() + " --field nope") == 2);
  }
  fs::remove_all(dir);
}

TEST_CASE("gen writes instance documents deterministically") {
  const fs::path dir = fresh_dir("gen");
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  CHECK(run_cli("gen --type lad --m 6 --n 15 --seed 9 --out " + a) == 0);
  CHECK(run_cli("gen --type lad --m 6 --n 15 --seed 9 --out " + b) == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(run_cli("gen --type lad --m 6 --n 15 --seed 10 --out " + b) == 0);
  CHECK(read_file(a) != read_file(b));

  CHECK(run_cli("gen --type l1l1 --out " + (dir / "c.json").string()) == 0);
  const json doc = json::parse(read_file(dir / "c.json"));
  CHECK(doc.is_object());

  CHECK(run_cli("gen --type nope --out " + (dir / "d.json").string()) == 2);
  CHECK(run_cli("gen --type lad --m 20 --n 20 --out " + (dir / "d.json").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("generated instances feed back into run via file type") {
  const fs::path dir = fresh_dir("roundtrip");
  CHECK(run_cli("gen --type l1l1 --out " + (dir / "inst.json").string()) == 0);
  json cfg = small_config(30);
  cfg["instances"] = json::array(
      {json{{"type", "file"}, {"name", "gen"}, {"path", "inst.json"}, {"phi_star", 6.0}}});
  write_json(dir / "cfg.json", cfg);
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "gen_split.csv"));
  fs::remove_all(dir);
}

TEST_CASE("seed override changes the generated data") {
  const fs::path dir = fresh_dir("seed");
  json cfg = small_config(20);
  // use a lad instance so the seed actually matters
  cfg["instances"] = json::array({json{{"type", "lad"}, {"name", "lad"}, {"m", 6}, {"n", 15}}});
  write_json(dir / "cfg.json", cfg);
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "o1").string()) == 0);
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "o2").string()) == 0);
  CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --seed 55 --out " +
                (dir / "o3").string()) == 0);
  CHECK(read_file(dir / "o1" / "lad_split.csv") == read_file(dir / "o2" / "lad_split.csv"));
  CHECK(read_file(dir / "o1" / "lad_split.csv") != read_file(dir / "o3" / "lad_split.csv"));
  fs::remove_all(dir);
}
