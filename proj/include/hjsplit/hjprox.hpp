#pragma once

#include <cstdint>
#include <vector>

#include "hjsplit/function.hpp"
#include "hjsplit/point.hpp"

namespace hjsplit {

// Parameters of one Monte Carlo proximal call: prox parameter t, smoothing
// level delta (same units as f), sample count N, and the retry policy used
// when every sample lands where f is infinite.
struct HJProxConfig {
  double t = 0.1;
  double delta = 0.1;
  int samples = 1000;
  std::uint64_t seed = 0;
  double min_effective_weight = 1e-12;
  int max_retries = 3;
  double retry_delta_factor = 10.0;
  bool collect_weights = false;  // diagnostics only; weights for N samples

  void validate() const;
};

struct HJProxDiagnostics {
  double ess = 0.0;              // effective sample size 1 / sum(w_i^2)
  int zero_weight_samples = 0;   // samples with weight exactly 0 (f = +inf or underflow)
  int retries_used = 0;
  double delta_used = 0.0;       // delta after any retry inflation
  long evals = 0;
  std::vector<double> weights;   // filled only when collect_weights is set
};

struct HJProxResult {
  Point estimate;
  HJProxDiagnostics diagnostics;
};

// Monte Carlo estimate of prox_{tf}(x): draws y_i ~ N(x, delta*t*I), weights
// them by softmax(-f(y_i)/delta) with max-subtraction, and returns the
// weighted average. Deterministic given (seed, N, inputs); the reduction runs
// in sample-index order. Throws DegenerateWeights when no sample has finite
// objective (or the weight mass is below the configured floor) after all
// delta-inflation retries.
HJProxResult hj_prox(const ZeroOrderFunction& f, const Point& x, const HJProxConfig& cfg);

// Error-bound constants of the deterministic and Monte Carlo analyses for one
// (n, L, t, delta) setting. Exponents above 700 saturate to +inf.
struct BoundReport {
  int n = 0;
  double lipschitz = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double alpha = 0.0;

  double deterministic_bound = 0.0;  // sqrt(n t delta)
  double j_star = 0.0;               // exp(2 L^2 t / delta)
  double log_j_star = 0.0;
  double m_star = 0.0;               // n t delta + (2 sqrt(n t delta) + 3 L t)^2

  // sqrt(8 J* M* / (alpha N))
  double mc_bound(long n_samples) const;
  // ceil(8 J* / alpha); saturates to the largest long when J* overflows
  long min_samples() const;
};

BoundReport bound_report(int n, double lipschitz, const HJProxConfig& cfg, double alpha);

// Sample-complexity constants for proxing f and g separately versus proxing
// f+g as one function. Log values stay finite when the exponentials overflow.
struct SplitComplexity {
  double j_f = 0.0, j_g = 0.0, j_fg_upper = 0.0;
  double log_j_f = 0.0, log_j_g = 0.0, log_j_fg_upper = 0.0;
  double log_j_f_plus_j_g = 0.0;  // log(J_f + J_g)
};

SplitComplexity split_complexity_compare(double l_f, double l_g, double t, double delta);

}  // namespace hjsplit
