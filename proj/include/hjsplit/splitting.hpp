#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hjsplit/function.hpp"
#include "hjsplit/hjprox.hpp"
#include "hjsplit/linear_operator.hpp"
#include "hjsplit/schedules.hpp"
#include "hjsplit/trace.hpp"

namespace hjsplit {

enum class Method { PPM, PGD, DRS, DYS, PDHG };

std::string method_name(Method m);

struct TermSpec {
  ZeroOrderFunction fn;
  ProxBackend backend;
};

// Full description of one solver run. Term layout by method:
//   PPM:  terms[0] = f+g as a single function
//   PGD:  terms[0] = g (prox term), smooth = f
//   DRS:  terms[0] = f, terms[1] = g
//   DYS:  terms[0] = f, terms[1] = g, smooth = h
//   PDHG: terms[0] = f, terms[1] = g* (the Fenchel conjugate), linear_op = A.
//         When the conjugate cannot be evaluated pointwise, pdhg_primal_g
//         supplies g itself and the HJ backend reaches prox_{sigma g*} through
//         the Moreau identity.
// Step-size policy for PPM/PGD. The diminishing rule t_k = step_t / k is the
// O(1/k) regime the almost-sure convergence analysis assumes for those two
// methods; the other splittings keep t fixed.
enum class StepRule { Fixed, DiminishingOverK };

struct SolverSpec {
  Method method = Method::PPM;
  std::vector<TermSpec> terms;
  std::optional<ZeroOrderFunction> smooth;
  std::optional<LinearOperator> linear_op;
  std::optional<ZeroOrderFunction> pdhg_primal_g;

  double step_t = 0.1;
  StepRule step_rule = StepRule::Fixed;
  double tau = 0.0, sigma = 0.0;
  Schedule schedule = Schedule::practical_fixed_n(0.1, 1000, 0.1, 0.5);
  int max_iters = 100;
  std::uint64_t seed = 0;

  Point x0;
  std::optional<Point> dual0;  // PDHG dual start; zeros when absent

  void validate() const;
};

struct SolverState {
  Point x;  // PPM/PGD/DYS governing iterate; PDHG primal; DRS second prox output
  Point y;  // DRS x_{k+1/2}; DYS prox_f output; PDHG dual
  Point z;  // DRS governing iterate; DYS prox_g output
};

// Primal point whose objective a trace row reports.
const Point& solution_point(Method m, const SolverState& s);

// Prox dispatcher bound to one iteration of one run: exact backends call the
// term's closed form, HJ backends run the Monte Carlo estimator with the
// iteration's (delta_k, N_k) and a seed derived from (run seed, k, term slot).
class ProxCall {
 public:
  ProxCall(double delta_k, int n_k, std::uint64_t run_seed, int k, long* samples_accum,
           double* min_ess = nullptr);

  Point operator()(const TermSpec& term, const Point& v, double t, int term_slot) const;

 private:
  double delta_k_;
  int n_k_;
  std::uint64_t run_seed_;
  int k_;
  long* samples_accum_;
  double* min_ess_;
};

// One iteration of each splitting scheme. States are only modified on success.
void step_ppm(SolverState& s, const TermSpec& f_plus_g, const ProxCall& prox, double t_k);
void step_pgd(SolverState& s, const ZeroOrderFunction& f_smooth, const TermSpec& g,
              const ProxCall& prox, double t_k);
void step_drs(SolverState& s, const TermSpec& f, const TermSpec& g, const ProxCall& prox, double t);
void step_dys(SolverState& s, const TermSpec& f, const TermSpec& g, const ZeroOrderFunction& h,
              const ProxCall& prox, double t);
void step_pdhg(SolverState& s, const TermSpec& f, const TermSpec& g_conj,
               const std::optional<ZeroOrderFunction>& g_primal, const LinearOperator& A,
               const ProxCall& prox, double tau, double sigma);

// Analytical fixed-point operators (always exact proxes, regardless of the
// run's backends). Every member is optional; a residual request that needs a
// missing member throws ResidualUnavailable.
struct ExactFixedPointOps {
  std::function<Point(const Point&)> prox_f;       // prox_{t f}
  std::function<Point(const Point&)> prox_g;       // prox_{t g}
  std::function<Point(const Point&)> prox_fg;      // prox_{t (f+g)} for PPM
  std::function<Point(const Point&)> grad_f;       // PGD smooth gradient
  std::function<Point(const Point&)> grad_h;       // DYS smooth gradient
  std::function<Point(const Point&)> prox_gconj;   // prox_{sigma g*} for PDHG
  std::optional<LinearOperator> A;
  double t = 0.0, tau = 0.0, sigma = 0.0;
};

// :T(state) - state: for the method's analytical map T. PDHG uses the
// weighted product-space norm (1/tau):dz:^2 + (1/sigma):dw:^2.
double fixed_point_residual(Method m, const SolverState& s, const ExactFixedPointOps& ops);

struct RunHooks {
  std::function<double(const Point&)> objective;                       // finite part
  std::function<double(const Point&)> violation;                       // optional
  std::function<std::optional<double>(const SolverState&)> residual;   // optional
  bool timing = true;
};

// Iterates the configured method, recording one trace row per iteration
// (row 0 is the initial state). DegenerateWeights and NumericalDivergence
// stop the run early; the partial trace carries the failure status.
Trace run(const SolverSpec& spec, const RunHooks& hooks);

}  // namespace hjsplit
