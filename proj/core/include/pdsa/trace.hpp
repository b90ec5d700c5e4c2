#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pdsa {

/// One sampled iteration. Fields that a given run does not compute (for
/// example energy when no saddle point is known) stay empty and serialize as
/// empty CSV cells.
struct TraceRow {
  long k = 0;
  std::optional<double> objective_residual;
  std::optional<double> feasibility;
  std::optional<double> lagrangian_gap;
  std::optional<double> iterate_norm;
  std::optional<double> dist_to_point;
  std::optional<double> energy;
  std::optional<double> inner_residual;
  std::optional<double> wall_ms;
};

struct IterationTrace {
  std::vector<TraceRow> rows;
};

inline const char* trace_csv_header() {
  return "k,objective_residual,feasibility,lagrangian_gap,iterate_norm,dist_to_point,energy,"
         "inner_residual,wall_ms";
}

/// Round-trip exact serialization (%.17g).
std::string trace_to_csv(const IterationTrace& t);
void write_trace_csv(const IterationTrace& t, const std::string& path);
IterationTrace read_trace_csv(const std::string& path);
IterationTrace parse_trace_csv(const std::string& text);

}  // namespace pdsa
