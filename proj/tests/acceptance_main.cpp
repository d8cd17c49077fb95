// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion states its tolerance inline.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracles.hpp"

#include "hjsplit/config.hpp"
#include "hjsplit/csv.hpp"
#include "hjsplit/exact_prox.hpp"
#include "hjsplit/experiments.hpp"
#include "hjsplit/hjprox.hpp"
#include "hjsplit/problems.hpp"
#include "hjsplit/rng.hpp"
#include "hjsplit/splitting.hpp"

using namespace hjsplit;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %s (%s; %.1fs)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run_criterion(int number, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(number, name, pass, detail, secs);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ZeroOrderFunction l1_fn() {
  ZeroOrderFunction f;
  f.name = "l1";
  f.eval = [](const Point& x) { return x.vec().cwiseAbs().sum(); };
  return f;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. prox-oracle equivalence

std::pair<bool, std::string> criterion_prox_oracles() {
  RngStream rng(1001);
  bool ok = true;
  std::ostringstream note;

  // closed forms to 1e-12
  for (int trial = 0; trial < 20; ++trial) {
    const Point x = oracles::random_point(3, rng, 2.0);
    const double tau = 0.3 + rng.uniform01();
    const Point st = soft_threshold(x, tau);
    for (int i = 0; i < 3; ++i) {
      const double expect =
          (x[i] > tau) ? x[i] - tau : (x[i] < -tau ? x[i] + tau : 0.0);
      ok = ok && std::abs(st[i] - expect) <= 1e-12;
      ok = ok && std::abs(project_nonnegative(x)[i] - std::max(x[i], 0.0)) <= 1e-12;
      ok = ok && std::abs(project_box(x, -1.0, 1.0)[i] -
                          std::min(std::max(x[i], -1.0), 1.0)) <= 1e-12;
    }
  }
  if (!ok) return {false, "closed-form mismatch"};

  // every catalog entry against the brute-force oracle on n <= 3 instances
  double worst = 0.0;
  for (const auto& entry : prox_catalog()) {
    const int n = (entry.name == "pair_ball_unit") ? 2 : 3;
    for (int trial = 0; trial < 20; ++trial) {
      const Point x = oracles::random_point(n, rng, 1.5);
      const double t = 0.3 + rng.uniform01();

      ZeroOrderFunction implied;
      implied.name = entry.name;
      if (entry.name == "soft_threshold") {
        implied.eval = [t](const Point& z) { return z.vec().cwiseAbs().sum(); };
      } else if (entry.name == "project_nonnegative") {
        implied.eval = [](const Point& z) {
          for (int i = 0; i < z.dim(); ++i)
            if (z[i] < 0.0) return std::numeric_limits<double>::infinity();
          return 0.0;
        };
      } else if (entry.name == "clamp_unit") {
        implied.eval = [](const Point& z) {
          for (int i = 0; i < z.dim(); ++i)
            if (std::abs(z[i]) > 1.0) return std::numeric_limits<double>::infinity();
          return 0.0;
        };
      } else if (entry.name == "pair_ball_unit") {
        implied.eval = [](const Point& z) {
          return std::hypot(z[0], z[1]) > 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
        };
      } else {  // group_soft_threshold_pair on n=3: pair {0,1} plus singleton {2}
        implied.eval = [](const Point& z) {
          return std::hypot(z[0], z[1]) + std::abs(z[2]);
        };
      }

      // indicator proxes do not depend on t; the norm proxes use prox_{t f}
      const Point mine = entry.prox(x, t);
      const Point oracle = brute_force_prox(implied, x, t);
      worst = std::max(worst, (mine.vec() - oracle.vec()).cwiseAbs().maxCoeff());
    }
  }
  if (worst > 1e-3) return {false, "catalog vs brute force gap " + fmt(worst)};

  // quadratic resolvent and the trend projection against independent oracles
  double worst2 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Mat X(4, 3);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) X(i, j) = rng.normal();
    const Point y = oracles::random_point(4, rng);
    const Point x = oracles::random_point(3, rng);
    const double t = 0.3 + rng.uniform01();
    ZeroOrderFunction quad;
    quad.eval = [X, y](const Point& z) { return 0.5 * (X * z.vec() - y.vec()).squaredNorm(); };
    quad.name = "quad";
    const Point mine = prox_quadratic(x, t, LinearOperator::dense(X), y);
    const Point oracle = brute_force_prox(quad, x, t);
    worst2 = std::max(worst2, (mine.vec() - oracle.vec()).cwiseAbs().maxCoeff());

    // trend projection: eliminate w and grid over beta in 2-d
    const LinearOperator D = LinearOperator::difference(1, 2);
    const Point b0 = oracles::random_point(2, rng);
    const Point w0 = oracles::random_point(1, rng);
    auto [pb, pw] = subspace_projection_trend(b0, w0, D);
    ZeroOrderFunction joint;
    joint.name = "joint";
    joint.eval = [D, w0](const Point& beta) {
      return 0.5 * (D.apply(beta).vec() - w0.vec()).squaredNorm();
    };
    const Point ob = brute_force_prox(joint, b0, 1.0);
    worst2 = std::max(worst2, (pb.vec() - ob.vec()).cwiseAbs().maxCoeff());
  }
  if (worst2 > 1e-3) return {false, "resolvent/projection vs oracle gap " + fmt(worst2)};

  return {true, "max gap " + fmt(std::max(worst, worst2))};
}

// ---------------------------------------------------------------------------
// 2. Monte Carlo error-bound frequency test

std::pair<bool, std::string> criterion_mc_frequency() {
  const int n = 5;
  const double t = 0.1, delta = 0.05, alpha = 0.1;
  const double lipschitz = std::sqrt(double(n));  // l1 norm
  HJProxConfig cfg;
  cfg.t = t;
  cfg.delta = delta;
  const BoundReport bound = bound_report(n, lipschitz, cfg, alpha);

  // stated N = max(min_N(alpha), 1e4); min_N here is ~3.9e10, far beyond the
  // criterion's own 60 s budget, so the practical branch N = 1e4 runs and the
  // bound is evaluated at that N (see the project notes)
  long n_samples = 10000;
  if (bound.min_samples() <= 100000) n_samples = std::max(bound.min_samples(), n_samples);
  const double threshold = bound.mc_bound(n_samples) + bound.deterministic_bound;

  const Point x(Vec{{2.0, 0.5, -1.0, 0.03, -0.4}});
  const Point exact = soft_threshold(x, t);

  int exceed = 0;
  std::vector<double> errs;
  for (int trial = 1; trial <= 1000; ++trial) {
    HJProxConfig c = cfg;
    c.samples = int(n_samples);
    c.seed = 20000 + trial;
    const auto res = hj_prox(l1_fn(), x, c);
    const double err = (res.estimate.vec() - exact.vec()).norm();
    errs.push_back(err);
    if (err > threshold) ++exceed;
  }
  const double fraction = exceed / 1000.0;
  return {fraction <= 0.12, "exceed fraction " + fmt(fraction) + " (bound " + fmt(threshold) +
                                ", median err " + fmt(median(errs)) + ", N=" +
                                std::to_string(n_samples) + ")"};
}

// ---------------------------------------------------------------------------
// 3. smoothing-bias decay in delta

std::pair<bool, std::string> criterion_bias_decay() {
  const int n = 5;
  const double t = 0.1;
  const double lipschitz = std::sqrt(double(n));
  // evaluation point inside the shrinkage kink: the prox target is the origin
  const Point x(Vec{{0.012, -0.008, 0.015, 0.004, -0.011}});

  const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  std::vector<double> medians;
  bool caps_ok = true;
  std::ostringstream note;
  for (double delta : deltas) {
    std::vector<double> errs;
    for (int s = 0; s < 50; ++s) {
      HJProxConfig cfg;
      cfg.t = t;
      cfg.delta = delta;
      cfg.samples = 1000000;
      cfg.seed = 31000 + s;
      errs.push_back(hj_prox(l1_fn(), x, cfg).estimate.vec().norm());
    }
    const double med = median(errs);
    medians.push_back(med);

    HJProxConfig cfg;
    cfg.t = t;
    cfg.delta = delta;
    const BoundReport bound = bound_report(n, lipschitz, cfg, 0.5);
    const double cap = bound.deterministic_bound + 3.0 * bound.mc_bound(1000000);
    caps_ok = caps_ok && (med <= cap);
    note << fmt(med) << (delta == deltas.back() ? "" : " / ");
  }
  const bool monotone = medians[0] >= medians[1] && medians[1] >= medians[2];
  return {monotone && caps_ok, "median errors " + note.str() +
                                   (monotone ? "" : " NOT non-increasing") +
                                   (caps_ok ? "" : " cap exceeded")};
}

// ---------------------------------------------------------------------------
// 4. desk lasso: hj-pgd within 2% of exact pgd on 3 of 3 seeds

std::pair<bool, std::string> criterion_lasso_pgd() {
  std::ostringstream note;
  bool ok = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    RunConfig cfg;
    cfg.experiment = "lasso";
    cfg.mode = "compare-all";
    cfg.scale = "desk";
    cfg.seed = seed;
    cfg.iters = 1000;
    cfg.samples = 1000;
    cfg.delta0 = 0.1;
    cfg.p = 0.5;  // delta_k = 0.1 / k^2.5
    cfg.timing = false;
    const auto outcome = run_experiment(cfg);
    const double exact = outcome.runs[0].trace.back().objective;
    const double hj = outcome.runs[1].trace.back().objective;
    const double rel = std::abs(hj - exact) / std::abs(exact);
    note << "seed " << seed << ": " << fmt(rel) << "  ";
    ok = ok && rel <= 0.02 && outcome.runs[1].trace.status == "ok";
  }
  return {ok, note.str() + "(tolerance 0.02)"};
}

// ---------------------------------------------------------------------------
// 5. desk trend filtering: hj-drs within 5% of the product-space baseline

std::pair<bool, std::string> criterion_trend_drs() {
  RunConfig cfg;
  cfg.experiment = "trend";
  cfg.mode = "compare-all";
  cfg.scale = "desk";
  cfg.seed = 1;
  cfg.iters = 5000;
  cfg.samples = 1000;
  cfg.timing = false;
  const auto outcome = run_experiment(cfg);
  const double exact = outcome.runs[0].trace.back().objective;
  const double hj = outcome.runs[1].trace.back().objective;
  const double rel = std::abs(hj - exact) / std::abs(exact);
  return {rel <= 0.05 && outcome.runs[1].trace.status == "ok",
          "relative gap " + fmt(rel) + " (exact " + fmt(exact) + ", hj " + fmt(hj) +
              ", tolerance 0.05)"};
}

// ---------------------------------------------------------------------------
// 6. nnlasso residual ordering across the four configurations

std::pair<bool, std::string> criterion_nnlasso_ordering() {
  std::vector<std::array<double, 4>> residuals;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunConfig cfg;
    cfg.experiment = "nnlasso";
    cfg.mode = "compare-all";
    cfg.scale = "desk";
    cfg.seed = seed;
    cfg.iters = 1000;
    cfg.samples = 1000;
    cfg.timing = false;
    const auto outcome = run_experiment(cfg);
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) r[i] = outcome.runs[i].trace.back().residual.value_or(1e300);
    residuals.push_back(r);
  }

  std::array<double, 4> med{};
  for (int i = 0; i < 4; ++i) {
    std::vector<double> col;
    for (const auto& r : residuals) col.push_back(r[i]);
    med[i] = median(col);
  }
  const bool median_chain = med[0] <= med[1] && med[1] <= med[2] && med[2] <= med[3];

  int violations = 0;
  for (const auto& r : residuals)
    for (int i = 0; i + 1 < 4; ++i)
      if (r[i] > r[i + 1]) ++violations;

  std::ostringstream note;
  note << "medians exact/hj1/hj2/ppm = " << fmt(med[0]) << " / " << fmt(med[1]) << " / "
       << fmt(med[2]) << " / " << fmt(med[3]) << ", per-seed adjacent violations " << violations;
  return {median_chain && violations <= 1, note.str()};
}

// ---------------------------------------------------------------------------
// 7. split complexity constants

std::pair<bool, std::string> criterion_split_constants() {
  RngStream rng(7001);
  for (int trial = 0; trial < 100; ++trial) {
    const double lf = 0.7 + 2.3 * rng.uniform01();
    const double lg = 0.7 + 2.3 * rng.uniform01();
    const double delta = 0.1 + 0.9 * rng.uniform01();
    const double t = delta * (0.5 + 3.5 * rng.uniform01());
    const SplitComplexity s = split_complexity_compare(lf, lg, t, delta);
    if (!(s.log_j_f_plus_j_g < s.log_j_fg_upper))
      return {false, "violated at Lf=" + fmt(lf) + " Lg=" + fmt(lg) + " t=" + fmt(t) +
                         " delta=" + fmt(delta)};
  }

  // every generated desk instance with two Lipschitz penalty terms, at its
  // default step size and the schedule's mid-run smoothing level
  for (const auto& name : problem_names()) {
    const auto inst = gen_by_name(name, Scale::Desk, 11);
    std::vector<double> ls;
    for (const auto& term : inst.terms)
      if (term.lipschitz_f && *term.lipschitz_f > 0.0) ls.push_back(*term.lipschitz_f);
    if (ls.size() < 2) continue;
    const ExperimentDefaults def = experiment_defaults(inst);
    const double t = def.t > 0 ? def.t : def.tau;
    const double delta_50 = Schedule::practical_fixed_n(t, 1000, 0.1, 0.5).params_at(50).delta_k;
    const SplitComplexity s = split_complexity_compare(ls[0], ls[1], t, delta_50);
    if (!(s.log_j_f_plus_j_g < s.log_j_fg_upper)) return {false, "violated on instance " + name};
  }
  return {true, "100 random draws + instance constants"};
}

// ---------------------------------------------------------------------------
// 8. exact solver cross-agreement on one desk lasso

std::pair<bool, std::string> criterion_solver_agreement() {
  const auto inst = gen_lasso(Scale::Desk, 4);
  const double L = *inst.smooth_term->lipschitz_grad;
  const double t = 1.0 / L;
  const int iters = 5000;
  RunHooks hooks;
  hooks.timing = false;
  hooks.objective = [&inst](const Point& p) { return inst.objective_finite(p); };

  const auto sched = Schedule::practical_fixed_n(t, 100, 0.1, 0.5);
  std::vector<double> finals;

  {
    SolverSpec spec;
    spec.method = Method::PGD;
    spec.terms = {{inst.terms[0], ProxBackend::exact()}};
    spec.smooth = inst.smooth_term;
    spec.step_t = t;
    spec.schedule = sched;
    spec.max_iters = iters;
    spec.x0 = Point::zeros(100);
    finals.push_back(run(spec, hooks).back().objective);
  }
  {
    SolverSpec spec;
    spec.method = Method::DRS;
    spec.terms = {{*inst.smooth_term, ProxBackend::exact()},
                  {inst.terms[0], ProxBackend::exact()}};
    spec.step_t = t;
    spec.schedule = sched;
    spec.max_iters = iters;
    spec.x0 = Point::zeros(100);
    finals.push_back(run(spec, hooks).back().objective);
  }
  {
    SolverSpec spec;
    spec.method = Method::DYS;
    spec.terms = {{inst.terms[0], ProxBackend::exact()},
                  {make_zero_term(), ProxBackend::exact()}};
    spec.smooth = inst.smooth_term;
    spec.step_t = t;
    spec.schedule = sched;
    spec.max_iters = iters;
    spec.x0 = Point::zeros(100);
    finals.push_back(run(spec, hooks).back().objective);
  }

  const double lo = *std::min_element(finals.begin(), finals.end());
  const double hi = *std::max_element(finals.begin(), finals.end());
  const double rel = (hi - lo) / std::abs(lo);
  return {rel <= 1e-4, "pgd/drs/dys finals " + fmt(finals[0]) + " / " + fmt(finals[1]) + " / " +
                           fmt(finals[2]) + ", spread " + fmt(rel) + " (tolerance 1e-4)"};
}

// ---------------------------------------------------------------------------
// 9. overlapping-group feasibility

std::pair<bool, std::string> criterion_oglasso() {
  RunConfig cfg;
  cfg.experiment = "oglasso";
  cfg.mode = "hj";
  cfg.scale = "desk";
  cfg.seed = 1;
  cfg.iters = 2000;
  cfg.samples = 1000;
  cfg.timing = false;

  const auto inst = gen_overlapping_group_lasso(Scale::Desk, cfg.seed);
  const auto outcome = run_experiment(cfg);
  const double at_zero =
      inst.objective_finite(Point::zeros(inst.ground_truth.dim()));
  const double final_obj = outcome.runs[0].trace.back().objective;
  const bool reduced = final_obj <= 0.7 * at_zero;

  // degenerate the overlap to a partition and compare against the exact solve
  const auto part = gen_overlapping_group_lasso(Scale::Desk, cfg.seed, true);
  const ExperimentDefaults def = experiment_defaults(part);
  const double t = def.t;
  RunHooks hooks;
  hooks.timing = false;
  hooks.objective = [&part](const Point& p) { return part.objective_finite(p); };

  SolverSpec hj_spec;
  hj_spec.method = Method::DYS;
  hj_spec.terms = {{part.terms[0], ProxBackend::hj()}, {part.terms[1], ProxBackend::exact()}};
  hj_spec.smooth = part.smooth_term;
  hj_spec.step_t = t;
  hj_spec.schedule = Schedule::practical_fixed_n(t, cfg.samples, cfg.delta0, cfg.p);
  hj_spec.max_iters = cfg.iters;
  hj_spec.seed = cfg.seed;
  hj_spec.x0 = Point::zeros(100);

  SolverSpec exact_spec = hj_spec;
  exact_spec.terms = {{part.terms[0], ProxBackend::exact()}, {part.terms[1], ProxBackend::exact()}};

  const Trace hj_trace = run(hj_spec, hooks);
  const Trace exact_trace = run(exact_spec, hooks);
  const double rel_obj = std::abs(hj_trace.back().objective - exact_trace.back().objective) /
                         std::abs(exact_trace.back().objective);

  std::ostringstream note;
  note << "objective at zero " << fmt(at_zero) << " -> " << fmt(final_obj)
       << " (need <= " << fmt(0.7 * at_zero) << "); partition-mode gap " << fmt(rel_obj)
       << " (tolerance 0.05)";
  return {reduced && rel_obj <= 0.05 && outcome.runs[0].trace.status == "ok", note.str()};
}

// ---------------------------------------------------------------------------
// 10. determinism of acceptance runs

std::pair<bool, std::string> criterion_determinism() {
  auto run_to = [](const std::string& dir, const std::string& experiment, int iters) {
    RunConfig cfg;
    cfg.experiment = experiment;
    cfg.mode = "compare-all";
    cfg.scale = "desk";
    cfg.seed = 5;
    cfg.iters = iters;
    cfg.samples = 200;
    cfg.timing = false;
    cfg.out_dir = dir;
    run_experiment_to_files(cfg);
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };

  const std::string base = fs::temp_directory_path().string() + "/hjsplit_accept";
  bool ok = true;
  for (const std::string exp : {"lasso", "nnlasso"}) {
    const std::string d1 = base + "_" + exp + "_1", d2 = base + "_" + exp + "_2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    run_to(d1, exp, exp == "lasso" ? 50 : 20);
    run_to(d2, exp, exp == "lasso" ? 50 : 20);
    for (const auto& entry : fs::directory_iterator(d1)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind(".csv") == std::string::npos) continue;
      ok = ok && slurp(d1 + "/" + name) == slurp(d2 + "/" + name);
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
  }
  return {ok, "lasso + nnlasso compare-all reruns byte-identical"};
}

}  // namespace

int main() {
  std::printf("hjsplit acceptance suite\n");
  run_criterion(1, "prox-oracle equivalence", criterion_prox_oracles);
  run_criterion(2, "Monte Carlo error frequency", criterion_mc_frequency);
  run_criterion(3, "smoothing bias decay", criterion_bias_decay);
  run_criterion(4, "desk lasso hj-pgd vs exact", criterion_lasso_pgd);
  run_criterion(5, "desk trend hj-drs vs product-space baseline", criterion_trend_drs);
  run_criterion(6, "nnlasso residual ordering", criterion_nnlasso_ordering);
  run_criterion(7, "split complexity constants", criterion_split_constants);
  run_criterion(8, "exact solver cross-agreement", criterion_solver_agreement);
  run_criterion(9, "overlapping-group feasibility", criterion_oglasso);
  run_criterion(10, "byte-identical reruns", criterion_determinism);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
