#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjsplit/errors.hpp"

namespace hjsplit {

struct TraceRow {
  int iter = 0;
  double objective = 0.0;                 // finite part for indicator-bearing objectives
  std::optional<double> residual;         // empty when no analytical fixed-point operator exists
  double t_k = 0.0;
  double delta_k = 0.0;
  long samples_used = 0;
  double wall_ms = 0.0;
  double violation = 0.0;                 // constraint violation, 0 when not applicable
};

struct Trace {
  std::vector<TraceRow> rows;
  // One of "ok", "degenerate_weights", "diverged". Runs that stop early keep
  // the rows recorded up to the failure.
  std::string status = "ok";
  std::string stop_message;

  void push(TraceRow row) {
    if (!rows.empty()) {
      if (row.iter <= rows.back().iter)
        throw Error("Trace: iteration indices must be strictly increasing");
    } else if (row.iter != 0) {
      throw Error("Trace: first row must be iteration 0");
    }
    if (row.residual && *row.residual < 0.0) throw Error("Trace: negative residual");
    if (row.wall_ms < 0.0) throw Error("Trace: negative wall time");
    rows.push_back(std::move(row));
  }

  const TraceRow& back() const { return rows.back(); }
  bool empty() const { return rows.empty(); }
};

}  // namespace hjsplit
