#include "hjsplit/hjprox.hpp"

#include <cmath>
#include <limits>

#include "hjsplit/errors.hpp"
#include "hjsplit/rng.hpp"

namespace hjsplit {

namespace {
constexpr double kExpOverflow = 700.0;

double safe_exp(double x) {
  if (x > kExpOverflow) return std::numeric_limits<double>::infinity();
  return std::exp(x);
}
}  // namespace

void HJProxConfig::validate() const {
  if (!(t > 0.0)) throw ConfigError("HJProxConfig: t must be > 0");
  if (!(delta > 0.0)) throw ConfigError("HJProxConfig: delta must be > 0");
  if (samples < 2) throw ConfigError("HJProxConfig: need at least 2 samples");
  if (!(min_effective_weight > 0.0 && min_effective_weight <= 1.0))
    throw ConfigError("HJProxConfig: min_effective_weight must be in (0,1]");
  if (!(retry_delta_factor > 1.0)) throw ConfigError("HJProxConfig: retry_delta_factor must be > 1");
}

HJProxResult hj_prox(const ZeroOrderFunction& f, const Point& x, const HJProxConfig& cfg) {
  cfg.validate();
  const int n = x.dim();
  const int N = cfg.samples;
  RngStream rng(cfg.seed);

  HJProxDiagnostics diag;
  double delta = cfg.delta;

  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt, delta *= cfg.retry_delta_factor) {
    const double sigma = std::sqrt(delta * cfg.t);

    std::vector<Vec> samples;
    samples.reserve(N);
    std::vector<double> logits(N);
    double max_logit = -std::numeric_limits<double>::infinity();
    int finite_count = 0;

    for (int i = 0; i < N; ++i) {
      Vec y(n);
      for (int j = 0; j < n; ++j) y(j) = x.vec()(j) + sigma * rng.normal();
      const double fy = f.eval(x.with_data(y));
      ++diag.evals;
      if (std::isnan(fy))
        throw NumericalDivergence("hj_prox: objective returned NaN for term '" + f.name + "'");
      double logit;
      if (std::isinf(fy)) {
        logit = -std::numeric_limits<double>::infinity();  // indicator: weight 0
      } else {
        logit = -fy / delta;
        ++finite_count;
        if (logit > max_logit) max_logit = logit;
      }
      logits[i] = logit;
      samples.push_back(std::move(y));
    }

    if (finite_count == 0) {
      ++diag.retries_used;
      continue;
    }

    // Softmax with max-subtraction; unnormalized weights and the weighted sum
    // are both accumulated in sample-index order.
    Vec weighted = Vec::Zero(n);
    double wsum = 0.0, wsq = 0.0;
    int zero_weights = 0;
    std::vector<double> weights;
    if (cfg.collect_weights) weights.resize(N);
    for (int i = 0; i < N; ++i) {
      double w = 0.0;
      if (std::isfinite(logits[i])) w = std::exp(logits[i] - max_logit);
      if (w == 0.0) ++zero_weights;
      wsum += w;
      wsq += w * w;
      weighted += w * samples[i];
      if (cfg.collect_weights) weights[i] = w;
    }

    const double ess = (wsq > 0.0) ? (wsum * wsum) / wsq : 0.0;
    if (ess < cfg.min_effective_weight * static_cast<double>(N)) {
      ++diag.retries_used;
      continue;
    }

    diag.ess = ess;
    diag.zero_weight_samples = zero_weights;
    diag.delta_used = delta;
    if (cfg.collect_weights) {
      for (double& w : weights) w /= wsum;
      diag.weights = std::move(weights);
    }
    return HJProxResult{x.with_data(weighted / wsum), std::move(diag)};
  }

  throw DegenerateWeights("hj_prox: proposal missed the finite region of '" + f.name + "' after " +
                          std::to_string(cfg.max_retries) + " retries (delta inflated to " +
                          std::to_string(delta / cfg.retry_delta_factor) + ")");
}

double BoundReport::mc_bound(long n_samples) const {
  if (n_samples <= 0) return std::numeric_limits<double>::infinity();
  const double log_val =
      std::log(8.0) + log_j_star + std::log(m_star) - std::log(alpha) - std::log(double(n_samples));
  return safe_exp(0.5 * log_val);
}

long BoundReport::min_samples() const {
  const double log_n = std::log(8.0) + log_j_star - std::log(alpha);
  if (log_n > std::log(2.0) * 62) return std::numeric_limits<long>::max();
  return static_cast<long>(std::ceil(safe_exp(log_n)));
}

BoundReport bound_report(int n, double lipschitz, const HJProxConfig& cfg, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidAlpha("bound_report: alpha must be in (0,1)");
  if (lipschitz < 0.0) throw ConfigError("bound_report: Lipschitz constant must be >= 0");
  cfg.validate();

  BoundReport r;
  r.n = n;
  r.lipschitz = lipschitz;
  r.t = cfg.t;
  r.delta = cfg.delta;
  r.alpha = alpha;

  const double ntd = n * cfg.t * cfg.delta;
  r.deterministic_bound = std::sqrt(ntd);
  r.log_j_star = 2.0 * lipschitz * lipschitz * cfg.t / cfg.delta;
  r.j_star = safe_exp(r.log_j_star);
  const double root = 2.0 * std::sqrt(ntd) + 3.0 * lipschitz * cfg.t;
  r.m_star = ntd + root * root;
  return r;
}

SplitComplexity split_complexity_compare(double l_f, double l_g, double t, double delta) {
  if (l_f < 0.0 || l_g < 0.0 || t < 0.0 || delta <= 0.0)
    throw ConfigError("split_complexity_compare: inputs must be nonnegative, delta > 0");
  SplitComplexity s;
  const double c = 2.0 * t / delta;
  s.log_j_f = c * l_f * l_f;
  s.log_j_g = c * l_g * l_g;
  const double sum_l = l_f + l_g;
  s.log_j_fg_upper = c * sum_l * sum_l;
  s.j_f = safe_exp(s.log_j_f);
  s.j_g = safe_exp(s.log_j_g);
  s.j_fg_upper = safe_exp(s.log_j_fg_upper);
  // log(e^a + e^b) via the usual shift
  const double hi = std::max(s.log_j_f, s.log_j_g);
  const double lo = std::min(s.log_j_f, s.log_j_g);
  s.log_j_f_plus_j_g = hi + std::log1p(std::exp(lo - hi));
  return s;
}

}  // namespace hjsplit
