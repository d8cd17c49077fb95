#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hjsplit/config.hpp"
#include "hjsplit/errors.hpp"
#include "hjsplit/experiments.hpp"
#include "hjsplit/problems.hpp"

using namespace hjsplit;

namespace {

struct CliOptions {
  RunConfig cfg;
  std::string config_path;
};

// flags on one subcommand; values land in opts.cfg after precedence merge
void add_run_flags(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file (flags override it)");
  cmd->add_option("--mode", opts.cfg.mode, "exact|hj|hybrid|compare-all");
  cmd->add_option("--solver", opts.cfg.solver, "solver override: ppm|pgd|drs|dys|pdhg");
  cmd->add_option("--scale", opts.cfg.scale, "paper|desk");
  cmd->add_option("--seed", opts.cfg.seed, "instance + solver seed");
  cmd->add_option("--iters", opts.cfg.iters, "iterations (0 = experiment default)");
  cmd->add_option("--t", opts.cfg.t, "prox step size (0 = experiment default)");
  cmd->add_option("--t-ppm", opts.cfg.t_ppm, "PPM step size override");
  cmd->add_option("--tau", opts.cfg.tau, "PDHG primal step");
  cmd->add_option("--sigma", opts.cfg.sigma, "PDHG dual step");
  cmd->add_option("--p", opts.cfg.p, "delta schedule exponent: delta_k = delta0/k^(2+p)");
  cmd->add_option("--delta0", opts.cfg.delta0, "delta schedule scale");
  cmd->add_option("--samples", opts.cfg.samples, "Monte Carlo samples per prox call");
  cmd->add_option("--step-rule", opts.cfg.step_rule, "auto|fixed|diminishing (PPM/PGD only)");
  cmd->add_option("--schedule", opts.cfg.schedule_mode,
                  "practical|diminishing|fixed (analysis schedules: PPM/PGD only)");
  cmd->add_option("--out", opts.cfg.out_dir, "output directory");
  cmd->add_flag("--plots", opts.cfg.plots, "also write SVG convergence plots");
  cmd->add_flag("!--no-timing", opts.cfg.timing, "write wall_ms as 0 for byte-stable output");
}

RunConfig merge_config(const CLI::App* cmd, const CliOptions& opts) {
  RunConfig merged = opts.cfg;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("cannot open config file " + opts.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    merged = RunConfig::from_json(buf.str());
    merged.experiment = opts.cfg.experiment;
    // CLI flags beat the file
    auto touched = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (touched("--mode")) merged.mode = opts.cfg.mode;
    if (touched("--solver")) merged.solver = opts.cfg.solver;
    if (touched("--scale")) merged.scale = opts.cfg.scale;
    if (touched("--seed")) merged.seed = opts.cfg.seed;
    if (touched("--iters")) merged.iters = opts.cfg.iters;
    if (touched("--t")) merged.t = opts.cfg.t;
    if (touched("--t-ppm")) merged.t_ppm = opts.cfg.t_ppm;
    if (touched("--tau")) merged.tau = opts.cfg.tau;
    if (touched("--sigma")) merged.sigma = opts.cfg.sigma;
    if (touched("--p")) merged.p = opts.cfg.p;
    if (touched("--delta0")) merged.delta0 = opts.cfg.delta0;
    if (touched("--samples")) merged.samples = opts.cfg.samples;
    if (touched("--step-rule")) merged.step_rule = opts.cfg.step_rule;
    if (touched("--schedule")) merged.schedule_mode = opts.cfg.schedule_mode;
    if (touched("--out")) merged.out_dir = opts.cfg.out_dir;
    if (touched("--plots")) merged.plots = opts.cfg.plots;
    if (touched("--no-timing")) merged.timing = opts.cfg.timing;
  }
  if (const char* env = std::getenv("HJSPLIT_OUT")) {
    if (cmd->count("--out") == 0) merged.out_dir = env;
  }
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hjsplit: operator-splitting solvers with Monte Carlo proximal steps"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<CliOptions>> option_sets;
  std::vector<std::pair<CLI::App*, CliOptions*>> run_cmds;

  for (const auto& name : problem_names()) {
    auto opts = std::make_unique<CliOptions>();
    opts->cfg.experiment = name;
    CLI::App* cmd = app.add_subcommand(name, "run the " + name + " experiment");
    add_run_flags(cmd, *opts);
    run_cmds.emplace_back(cmd, opts.get());
    option_sets.push_back(std::move(opts));
  }

  auto bounds_opts = std::make_unique<CliOptions>();
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "print error-bound constants for an experiment");
  bounds_cmd->add_option("experiment", bounds_opts->cfg.experiment, "experiment name")->required();
  add_run_flags(bounds_cmd, *bounds_opts);

  auto inst_opts = std::make_unique<CliOptions>();
  std::string inst_path = "instance.hjp";
  CLI::App* inst_cmd = app.add_subcommand("instance", "write a portable instance file");
  inst_cmd->add_option("experiment", inst_opts->cfg.experiment, "experiment name")->required();
  inst_cmd->add_option("--scale", inst_opts->cfg.scale, "paper|desk");
  inst_cmd->add_option("--seed", inst_opts->cfg.seed, "generator seed");
  inst_cmd->add_option("--file", inst_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [cmd, opts] : run_cmds) {
      if (cmd->parsed()) {
        RunConfig cfg = merge_config(cmd, *opts);
        const int status = run_experiment_to_files(cfg);
        std::cout << "wrote " << cfg.out_dir << "/summary.csv\n";
        return status;
      }
    }
    if (bounds_cmd->parsed()) {
      RunConfig cfg = merge_config(bounds_cmd, *bounds_opts);
      std::cout << report_bounds(cfg);
      return 0;
    }
    if (inst_cmd->parsed()) {
      const auto inst = gen_by_name(inst_opts->cfg.experiment, parse_scale(inst_opts->cfg.scale),
                                    inst_opts->cfg.seed);
      save_instance(inst, inst_path);
      std::cout << "wrote " << inst_path << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
