#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "pdsa/trace.hpp"

using namespace pdsa;

TEST_CASE("header is the documented schema") {
  CHECK(std::string(trace_csv_header()) ==
        "k,objective_residual,feasibility,lagrangian_gap,iterate_norm,dist_to_point,energy,"
        "inner_residual,wall_ms");
}

TEST_CASE("missing fields serialize as empty cells") {
  IterationTrace t;
  TraceRow r;
  r.k = 3;
  r.feasibility = 0.5;
  r.wall_ms = 12.25;
  t.rows.push_back(r);
  const std::string csv = trace_to_csv(t);
  const auto nl = csv.find('\n');
  const std::string line = csv.substr(nl + 1, csv.find('\n', nl + 1) - nl - 1);
  CHECK(line == "3,,0.5,,,,,,12.25");
}

TEST_CASE("round trip is exact") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IterationTrace t;
  for (long k = 1; k <= 200; ++k) {
    TraceRow r;
    r.k = k;
    r.objective_residual = std::exp(40.0 * u(rng));
    r.feasibility = std::exp(40.0 * u(rng));
    if (k % 3 == 0) r.lagrangian_gap = u(rng);
    r.iterate_norm = std::abs(u(rng));
    if (k % 7 == 0) r.dist_to_point = std::abs(u(rng));
    if (k % 2 == 0) r.energy = std::exp(20.0 * u(rng));
    r.inner_residual = std::abs(u(rng)) * 1e-9;
    t.rows.push_back(r);
  }
  const std::string csv = trace_to_csv(t);
  const IterationTrace back = parse_trace_csv(csv);
  REQUIRE(back.rows.size() == t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& a = t.rows[i];
    const auto& b = back.rows[i];
    CHECK(a.k == b.k);
    CHECK(a.objective_residual == b.objective_residual);
    CHECK(a.feasibility == b.feasibility);
    CHECK(a.lagrangian_gap == b.lagrangian_gap);
    CHECK(a.iterate_norm == b.iterate_norm);
    CHECK(a.dist_to_point == b.dist_to_point);
    CHECK(a.energy == b.energy);
    CHECK(a.inner_residual == b.inner_residual);
    CHECK(a.wall_ms == b.wall_ms);
  }
  CHECK(trace_to_csv(back) == csv);
}

TEST_CASE("file io") {
  namespace fs = std::filesystem;
  const auto path = (fs::temp_directory_path() / "pdsa_trace_test.csv").string();
  IterationTrace t;
  TraceRow r;
  r.k = 1;
  r.feasibility = 1.0 / 3.0;
  t.rows.push_back(r);
  write_trace_csv(t, path);
  const auto back = read_trace_csv(path);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].feasibility == t.rows[0].feasibility);
  std::remove(path.c_str());
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS(parse_trace_csv("not,a,header\n1,2,3\n"));
  CHECK_THROWS(parse_trace_csv(std::string(trace_csv_header()) + "\n1,2,3,4,5,6,7,8,9,10\n"));
  CHECK_THROWS(parse_trace_csv(std::string(trace_csv_header()) + "\n1,abc\n"));
  // short rows are padded with empty cells rather than rejected
  const auto t = parse_trace_csv(std::string(trace_csv_header()) + "\n4,,0.5\n");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].k == 4);
  CHECK(t.rows[0].feasibility == 0.5);
  CHECK(!t.rows[0].wall_ms.has_value());
}
