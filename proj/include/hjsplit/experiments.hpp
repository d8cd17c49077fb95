#pragma once

#include <string>
#include <vector>

#include "hjsplit/config.hpp"
#include "hjsplit/csv.hpp"
#include "hjsplit/problems.hpp"
#include "hjsplit/splitting.hpp"
#include "hjsplit/trace.hpp"

namespace hjsplit {

struct RunResult {
  std::string config_name;
  Trace trace;
};

struct ExperimentOutcome {
  ProblemInstance instance;
  std::vector<RunResult> runs;  // summary.csv keeps this order
};

// Configuration names run per experiment under compare-all, in summary order.
std::vector<std::string> configurations_for(const std::string& experiment, const std::string& mode);

// Builds the solver for one named configuration of an instance. Exposed so
// tests can drive single configurations directly.
SolverSpec build_solver(const ProblemInstance& inst, const std::string& config_name,
                        const RunConfig& cfg);
RunHooks build_hooks(const ProblemInstance& inst, const std::string& config_name,
                     const RunConfig& cfg);

// Runs every configuration of cfg.mode on one shared instance.
ExperimentOutcome run_experiment(const RunConfig& cfg);

// Runs and writes one CSV per configuration, summary.csv, the effective
// config, and optional SVG plots into cfg.out_dir. Returns the exit status.
int run_experiment_to_files(const RunConfig& cfg);

// Error-bound constant report: per-term bounds and the split-vs-nonsplit
// complexity comparison for the experiment's instance.
std::string report_bounds(const RunConfig& cfg);

// Per-experiment default step sizes and iteration counts (committed
// calibration constants; overridable from the config).
struct ExperimentDefaults {
  double t = 0.0;
  double tau = 0.0, sigma = 0.0;
  int iters = 0;
};
ExperimentDefaults experiment_defaults(const ProblemInstance& inst);

}  // namespace hjsplit
