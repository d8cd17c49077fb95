#pragma once

#include <string>
#include <vector>

#include "hjsplit/trace.hpp"

namespace hjsplit {

// Writes `iter,objective,residual,t_k,delta_k,samples,wall_ms` rows with 17
// significant digits and LF line endings. Missing residuals produce an empty
// field.
void emit_trace_csv(const Trace& trace, const std::string& path);

// Inverse of emit_trace_csv (status/violation are not part of the format).
Trace parse_trace_csv(const std::string& path);

struct SummaryRow {
  std::string config;
  std::string status;
  int iters = 0;
  double final_objective = 0.0;
  std::optional<double> final_residual;
  double final_violation = 0.0;
  double wall_ms = 0.0;
  std::string instance_hash;
};

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// Minimal polyline plot of objective (and residual when present) against
// iteration, written as an SVG file.
void write_trace_svg(const Trace& trace, const std::string& title, const std::string& path);

std::string format_g17(double v);

}  // namespace hjsplit
