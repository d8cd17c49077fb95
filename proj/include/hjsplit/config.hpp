#pragma once

#include <cstdint>
#include <string>

namespace hjsplit {

// One experiment invocation. Precedence: CLI flags > config file > defaults;
// the effective config is echoed into the output directory.
struct RunConfig {
  std::string experiment = "lasso";  // lasso|sglasso|trend|multitask|tv|nnlasso|oglasso
  std::string mode = "compare-all";  // exact|hj|hybrid|compare-all
  std::string solver;                // optional override: ppm|pgd|drs|dys|pdhg
  std::string scale = "desk";
  std::uint64_t seed = 1;
  int iters = 0;          // 0 = per-experiment default
  double t = 0.0;         // 0 = per-experiment default
  double t_ppm = 0.0;     // PPM step override; 0 = use t
  double tau = 0.0;
  double sigma = 0.0;
  double p = 0.5;
  double delta0 = 0.1;
  int samples = 1000;
  // auto|fixed|diminishing; auto picks the O(1/k) step rule for the PPM/PGD
  // experiments and fixed steps for the other splittings
  std::string step_rule = "auto";
  // practical|diminishing|fixed; the non-practical schedules size N_k from the
  // convergence analysis and are only usable for short demonstration runs
  std::string schedule_mode = "practical";
  std::string out_dir = "out";
  bool timing = true;
  bool plots = false;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  void validate() const;
};

}  // namespace hjsplit
