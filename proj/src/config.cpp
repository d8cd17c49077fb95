#include "hjsplit/config.hpp"

#include <json.hpp>

#include "hjsplit/errors.hpp"
#include "hjsplit/problems.hpp"

namespace hjsplit {

using nlohmann::json;

std::string RunConfig::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["mode"] = mode;
  j["solver"] = solver;
  j["scale"] = scale;
  j["seed"] = seed;
  j["iters"] = iters;
  j["t"] = t;
  j["t_ppm"] = t_ppm;
  j["tau"] = tau;
  j["sigma"] = sigma;
  j["p"] = p;
  j["delta0"] = delta0;
  j["samples"] = samples;
  j["step_rule"] = step_rule;
  j["schedule_mode"] = schedule_mode;
  j["out_dir"] = out_dir;
  j["timing"] = timing;
  j["plots"] = plots;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig c;
  auto get = [&j](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("experiment", c.experiment);
  get("mode", c.mode);
  get("solver", c.solver);
  get("scale", c.scale);
  get("seed", c.seed);
  get("iters", c.iters);
  get("t", c.t);
  get("t_ppm", c.t_ppm);
  get("tau", c.tau);
  get("sigma", c.sigma);
  get("p", c.p);
  get("delta0", c.delta0);
  get("samples", c.samples);
  if (j.contains("N")) c.samples = j.at("N").get<int>();  // schedule-key alias
  get("step_rule", c.step_rule);
  get("schedule_mode", c.schedule_mode);
  get("out_dir", c.out_dir);
  get("timing", c.timing);
  get("plots", c.plots);
  return c;
}

void RunConfig::validate() const {
  bool known = false;
  for (const auto& name : problem_names()) known = known || name == experiment;
  if (!known) throw ConfigError("config: unknown experiment '" + experiment + "'");
  if (mode != "exact" && mode != "hj" && mode != "hybrid" && mode != "compare-all")
    throw ConfigError("config: unknown mode '" + mode + "'");
  if (!solver.empty() && solver != "ppm" && solver != "pgd" && solver != "drs" && solver != "dys" &&
      solver != "pdhg")
    throw ConfigError("config: unknown solver override '" + solver + "'");
  parse_scale(scale);
  if (iters < 0) throw ConfigError("config: iters must be >= 0");
  if (samples < 2) throw ConfigError("config: samples must be >= 2");
  if (!(p > 0.0)) throw ConfigError("config: p must be > 0");
  if (!(delta0 > 0.0)) throw ConfigError("config: delta0 must be > 0");
  if (step_rule != "auto" && step_rule != "fixed" && step_rule != "diminishing")
    throw ConfigError("config: unknown step_rule '" + step_rule + "'");
  if (schedule_mode != "practical" && schedule_mode != "diminishing" && schedule_mode != "fixed")
    throw ConfigError("config: unknown schedule_mode '" + schedule_mode + "'");
}

}  // namespace hjsplit
