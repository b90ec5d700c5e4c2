#include "pdsa/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pdsa {

namespace {

void appendCell(std::string& out, const std::optional<double>& v) {
  out.push_back(',');
  if (!v) return;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  out += buf;
}

std::optional<double> parseCell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trace csv: malformed number '" + s + "'");
  return v;
}

}  // namespace

std::string trace_to_csv(const IterationTrace& t) {
  std::string out = trace_csv_header();
  out.push_back('\n');
  for (const auto& r : t.rows) {
    out += std::to_string(r.k);
    appendCell(out, r.objective_residual);
    appendCell(out, r.feasibility);
    appendCell(out, r.lagrangian_gap);
    appendCell(out, r.iterate_norm);
    appendCell(out, r.dist_to_point);
    appendCell(out, r.energy);
    appendCell(out, r.inner_residual);
    appendCell(out, r.wall_ms);
    out.push_back('\n');
  }
  return out;
}

void write_trace_csv(const IterationTrace& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_trace_csv: cannot open " + path);
  f << trace_to_csv(t);
  if (!f) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

IterationTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trace_csv_header()) throw std::invalid_argument("trace csv: unexpected header");
  IterationTrace t;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < 9) cells.emplace_back();  // trailing empty cells
    if (cells.size() != 9) throw std::invalid_argument("trace csv: wrong column count");
    TraceRow r;
    r.k = std::stol(cells[0]);
    r.objective_residual = parseCell(cells[1]);
    r.feasibility = parseCell(cells[2]);
    r.lagrangian_gap = parseCell(cells[3]);
    r.iterate_norm = parseCell(cells[4]);
    r.dist_to_point = parseCell(cells[5]);
    r.energy = parseCell(cells[6]);
    r.inner_residual = parseCell(cells[7]);
    r.wall_ms = parseCell(cells[8]);
    t.rows.push_back(std::move(r));
  }
  return t;
}

IterationTrace read_trace_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_trace_csv: cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_trace_csv(buf.str());
}

}  // namespace pdsa
