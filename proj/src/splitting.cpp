#include "hjsplit/splitting.hpp"

#include <chrono>
#include <cmath>

#include "hjsplit/errors.hpp"
#include "hjsplit/exact_prox.hpp"
#include "hjsplit/rng.hpp"

namespace hjsplit {

std::string method_name(Method m) {
  switch (m) {
    case Method::PPM: return "ppm";
    case Method::PGD: return "pgd";
    case Method::DRS: return "drs";
    case Method::DYS: return "dys";
    case Method::PDHG: return "pdhg";
  }
  return "?";
}

void SolverSpec::validate() const {
  const auto need_terms = [&](std::size_t n) {
    if (terms.size() != n)
      throw ConfigError("SolverSpec: " + method_name(method) + " needs " + std::to_string(n) +
                        " prox terms, got " + std::to_string(terms.size()));
  };
  for (const auto& term : terms) term.backend.validate_for(term.fn);
  if (x0.dim() < 1) throw ConfigError("SolverSpec: initial point required");
  if (max_iters < 0) throw ConfigError("SolverSpec: max_iters must be >= 0");

  const bool diminishing = schedule.mode() == Schedule::Mode::DiminishingT;
  if (step_rule == StepRule::DiminishingOverK && method != Method::PPM && method != Method::PGD)
    throw ConfigError("SolverSpec: diminishing steps only apply to PPM and PGD");
  switch (method) {
    case Method::PPM:
      need_terms(1);
      if (!diminishing && !(step_t > 0.0)) throw ConfigError("SolverSpec: PPM needs step_t > 0");
      break;
    case Method::PGD: {
      need_terms(1);
      if (!smooth || !smooth->has_gradient())
        throw ConfigError("SolverSpec: PGD needs a smooth term with a gradient");
      if (!smooth->lipschitz_grad)
        throw ConfigError("SolverSpec: PGD needs lipschitz_grad on the smooth term");
      if (!diminishing && !(step_t > 0.0 && step_t < 2.0 / *smooth->lipschitz_grad))
        throw ConfigError("SolverSpec: PGD step must satisfy 0 < t < 2/L");
      break;
    }
    case Method::DRS:
      need_terms(2);
      if (!(step_t > 0.0)) throw ConfigError("SolverSpec: DRS needs fixed step_t > 0");
      break;
    case Method::DYS: {
      need_terms(2);
      if (!smooth || !smooth->has_gradient())
        throw ConfigError("SolverSpec: DYS needs a smooth term with a gradient");
      if (!smooth->lipschitz_grad)
        throw ConfigError("SolverSpec: DYS needs lipschitz_grad on the smooth term");
      if (!(step_t > 0.0 && step_t < 2.0 / *smooth->lipschitz_grad))
        throw ConfigError("SolverSpec: DYS step must satisfy 0 < t < 2/L");
      break;
    }
    case Method::PDHG: {
      need_terms(2);
      if (!linear_op) throw ConfigError("SolverSpec: PDHG needs the coupling operator A");
      if (!(tau > 0.0 && sigma > 0.0)) throw ConfigError("SolverSpec: PDHG needs tau, sigma > 0");
      const double a = linear_op->operator_norm();
      if (!(tau * sigma * a * a < 1.0))
        throw ConfigError("SolverSpec: PDHG requires tau*sigma*|A|^2 < 1 (got " +
                          std::to_string(tau * sigma * a * a) + ")");
      break;
    }
  }
}

const Point& solution_point(Method m, const SolverState& s) {
  switch (m) {
    case Method::PPM:
    case Method::PGD:
    case Method::PDHG:
      return s.x;
    case Method::DRS:
      return s.y;  // prox_f output
    case Method::DYS:
      return s.z;  // prox_g output
  }
  return s.x;
}

ProxCall::ProxCall(double delta_k, int n_k, std::uint64_t run_seed, int k, long* samples_accum,
                   double* min_ess)
    : delta_k_(delta_k), n_k_(n_k), run_seed_(run_seed), k_(k), samples_accum_(samples_accum),
      min_ess_(min_ess) {}

Point ProxCall::operator()(const TermSpec& term, const Point& v, double t, int term_slot) const {
  if (term.backend.kind == ProxBackend::Kind::Exact) return term.fn.exact_prox(v, t);
  HJProxConfig cfg;
  cfg.t = t;
  cfg.delta = delta_k_;
  cfg.samples = n_k_;
  cfg.seed = derive_seed(run_seed_, static_cast<std::uint64_t>(k_),
                         static_cast<std::uint64_t>(term_slot));
  auto res = hj_prox(term.fn, v, cfg);
  if (samples_accum_) *samples_accum_ += res.diagnostics.evals;
  if (min_ess_) *min_ess_ = std::min(*min_ess_, res.diagnostics.ess);
  return res.estimate;
}

void step_ppm(SolverState& s, const TermSpec& f_plus_g, const ProxCall& prox, double t_k) {
  s.x = prox(f_plus_g, s.x, t_k, 0);
}

void step_pgd(SolverState& s, const ZeroOrderFunction& f_smooth, const TermSpec& g,
              const ProxCall& prox, double t_k) {
  const Point grad = f_smooth.gradient(s.x);
  const Point forward = s.x.with_data(s.x.vec() - t_k * grad.vec());
  s.x = prox(g, forward, t_k, 0);
}

void step_drs(SolverState& s, const TermSpec& f, const TermSpec& g, const ProxCall& prox,
              double t) {
  const Point x_half = prox(f, s.z, t, 0);
  const Point reflected = s.z.with_data(2.0 * x_half.vec() - s.z.vec());
  const Point x_next = prox(g, reflected, t, 1);
  s.z = s.z.with_data(s.z.vec() + x_next.vec() - x_half.vec());
  s.y = x_half;
  s.x = x_next;
}

void step_dys(SolverState& s, const TermSpec& f, const TermSpec& g, const ZeroOrderFunction& h,
              const ProxCall& prox, double t) {
  const Point y_next = prox(f, s.x, t, 0);
  const Point grad = h.gradient(y_next);
  const Point arg = s.x.with_data(2.0 * y_next.vec() - s.x.vec() - t * grad.vec());
  const Point z_next = prox(g, arg, t, 1);
  s.x = s.x.with_data(s.x.vec() + z_next.vec() - y_next.vec());
  s.y = y_next;
  s.z = z_next;
}

void step_pdhg(SolverState& s, const TermSpec& f, const TermSpec& g_conj,
               const std::optional<ZeroOrderFunction>& g_primal, const LinearOperator& A,
               const ProxCall& prox, double tau, double sigma) {
  const Point dual_arg = s.y.with_data(s.y.vec() + sigma * A.apply(s.x).vec());
  Point y_next = s.y;
  if (g_conj.backend.kind == ProxBackend::Kind::HJ && g_primal) {
    // prox_{sigma g*} assembled from the Monte Carlo prox of g itself through
    // the Moreau identity; avoids sampling an indicator-valued conjugate.
    TermSpec primal{*g_primal, ProxBackend::hj()};
    const Point inner =
        prox(primal, dual_arg.with_data(dual_arg.vec() / sigma), 1.0 / sigma, 1);
    y_next = dual_arg.with_data(dual_arg.vec() - sigma * inner.vec());
  } else {
    y_next = prox(g_conj, dual_arg, sigma, 1);
  }
  const Point primal_arg = s.x.with_data(s.x.vec() - tau * A.apply_transpose(y_next).vec());
  s.x = prox(f, primal_arg, tau, 0);
  s.y = y_next;
}

double fixed_point_residual(Method m, const SolverState& s, const ExactFixedPointOps& ops) {
  const auto need = [](const auto& fn, const char* what) {
    if (!fn) throw ResidualUnavailable(std::string("fixed_point_residual: missing ") + what);
  };
  switch (m) {
    case Method::PPM: {
      need(ops.prox_fg, "prox of the combined objective");
      return (ops.prox_fg(s.x).vec() - s.x.vec()).norm();
    }
    case Method::PGD: {
      need(ops.prox_g, "prox_g");
      need(ops.grad_f, "grad_f");
      const Point fwd = s.x.with_data(s.x.vec() - ops.t * ops.grad_f(s.x).vec());
      return (ops.prox_g(fwd).vec() - s.x.vec()).norm();
    }
    case Method::DRS: {
      need(ops.prox_f, "prox_f");
      need(ops.prox_g, "prox_g");
      const Point p = ops.prox_f(s.z);
      const Point q = ops.prox_g(s.z.with_data(2.0 * p.vec() - s.z.vec()));
      return (q.vec() - p.vec()).norm();
    }
    case Method::DYS: {
      need(ops.prox_f, "prox_f");
      need(ops.prox_g, "prox_g");
      need(ops.grad_h, "grad_h");
      const Point p = ops.prox_f(s.x);
      const Point arg =
          s.x.with_data(2.0 * p.vec() - s.x.vec() - ops.t * ops.grad_h(p).vec());
      const Point q = ops.prox_g(arg);
      return (q.vec() - p.vec()).norm();
    }
    case Method::PDHG: {
      need(ops.prox_f, "prox_f");
      need(ops.prox_gconj, "prox of g*");
      if (!ops.A) throw ResidualUnavailable("fixed_point_residual: missing operator A");
      const Point w = ops.prox_gconj(s.y.with_data(s.y.vec() + ops.sigma * ops.A->apply(s.x).vec()));
      const Point z =
          ops.prox_f(s.x.with_data(s.x.vec() - ops.tau * ops.A->apply_transpose(w).vec()));
      const double dz = (z.vec() - s.x.vec()).squaredNorm();
      const double dw = (w.vec() - s.y.vec()).squaredNorm();
      return std::sqrt(dz / ops.tau + dw / ops.sigma);
    }
  }
  throw Error("fixed_point_residual: unknown method");
}

Trace run(const SolverSpec& spec, const RunHooks& hooks) {
  spec.validate();
  if (!hooks.objective) throw ConfigError("run: objective hook required");

  SolverState state{spec.x0, spec.x0, spec.x0};
  if (spec.method == Method::PDHG) {
    state.y = spec.dual0 ? *spec.dual0 : Point::zeros(spec.linear_op->rows());
  }

  Trace trace;
  const auto t_start = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    if (!hooks.timing) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
        .count();
  };

  const auto record = [&](int k, double t_k, double delta_k, long samples) {
    TraceRow row;
    row.iter = k;
    const Point& sol = solution_point(spec.method, state);
    row.objective = hooks.objective(sol);
    if (!std::isfinite(row.objective))
      throw NumericalDivergence("run: objective is not finite at iteration " + std::to_string(k));
    if (hooks.violation) row.violation = hooks.violation(sol);
    if (hooks.residual) row.residual = hooks.residual(state);
    row.t_k = t_k;
    row.delta_k = delta_k;
    row.samples_used = samples;
    row.wall_ms = elapsed_ms();
    trace.push(std::move(row));
  };

  record(0, 0.0, 0.0, 0);

  const bool diminishing = spec.schedule.mode() == Schedule::Mode::DiminishingT;
  for (int k = 1; k <= spec.max_iters; ++k) {
    const ScheduleParams params = spec.schedule.params_at(k);
    double t_k = spec.step_t;
    if (diminishing && (spec.method == Method::PPM || spec.method == Method::PGD))
      t_k = params.t_k;
    else if (spec.step_rule == StepRule::DiminishingOverK)
      t_k = spec.step_t / static_cast<double>(k);
    int n_k;
    if (spec.schedule.mode() == Schedule::Mode::PracticalFixedN) {
      n_k = spec.schedule.samples();
    } else {
      const long theory = spec.schedule.theoretical_n_at(k, spec.x0.dim(), 0.0).n_k;
      if (theory > 10'000'000L)
        throw ConfigError("run: theoretical sample schedule is impractical; use PracticalFixedN");
      n_k = static_cast<int>(theory);
    }

    long samples = 0;
    const ProxCall prox(params.delta_k, n_k, spec.seed, k, &samples);
    try {
      switch (spec.method) {
        case Method::PPM:
          step_ppm(state, spec.terms[0], prox, t_k);
          break;
        case Method::PGD:
          step_pgd(state, *spec.smooth, spec.terms[0], prox, t_k);
          break;
        case Method::DRS:
          step_drs(state, spec.terms[0], spec.terms[1], prox, t_k);
          break;
        case Method::DYS:
          step_dys(state, spec.terms[0], spec.terms[1], *spec.smooth, prox, t_k);
          break;
        case Method::PDHG:
          step_pdhg(state, spec.terms[0], spec.terms[1], spec.pdhg_primal_g, *spec.linear_op, prox,
                    spec.tau, spec.sigma);
          break;
      }
      record(k, t_k, params.delta_k, samples);
    } catch (const DegenerateWeights& e) {
      trace.status = "degenerate_weights";
      trace.stop_message = e.what();
      break;
    } catch (const NumericalDivergence& e) {
      trace.status = "diverged";
      trace.stop_message = e.what();
      break;
    }
  }
  return trace;
}

}  // namespace hjsplit
