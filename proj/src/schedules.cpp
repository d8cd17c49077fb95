#include "hjsplit/schedules.hpp"

#include <cmath>
#include <limits>

namespace hjsplit {

namespace {
constexpr double kExpOverflow = 700.0;
constexpr double kAlphaCap = 0.999;
}  // namespace

Schedule Schedule::diminishing_t(double p) {
  if (!(p > 0.0)) throw ConfigError("Schedule: p must be > 0");
  Schedule s;
  s.mode_ = Mode::DiminishingT;
  s.p_ = p;
  return s;
}

Schedule Schedule::fixed_t(double t, double p, double delta0) {
  if (!(t > 0.0) || !(p > 0.0) || !(delta0 > 0.0))
    throw ConfigError("Schedule: t, p, delta0 must be > 0");
  Schedule s;
  s.mode_ = Mode::FixedT;
  s.t_ = t;
  s.p_ = p;
  s.delta0_ = delta0;
  return s;
}

Schedule Schedule::practical_fixed_n(double t, int samples, double delta0, double p) {
  Schedule s = fixed_t(t, p, delta0);
  if (samples < 2) throw ConfigError("Schedule: need at least 2 samples");
  s.mode_ = Mode::PracticalFixedN;
  s.samples_ = samples;
  return s;
}

ScheduleParams Schedule::params_at(int k) const {
  if (k < 1) throw InvalidIteration("Schedule: k must be >= 1");
  ScheduleParams out;
  const double kd = static_cast<double>(k);
  switch (mode_) {
    case Mode::DiminishingT:
      out.t_k = 1.0 / kd;
      out.delta_k = std::pow(kd, -(p_ + 1.0));
      break;
    case Mode::FixedT:
    case Mode::PracticalFixedN:
      out.t_k = t_;
      out.delta_k = delta0_ * std::pow(kd, -(2.0 + p_));
      break;
  }
  out.alpha_k = std::min(std::pow(kd, -(p_ + 2.0)), kAlphaCap);
  return out;
}

Schedule::TheoreticalSamples Schedule::theoretical_n_at(int k, int n, double lipschitz) const {
  if (lipschitz < 0.0) throw ConfigError("theoretical_n_at: Lipschitz constant must be >= 0");
  const ScheduleParams p = params_at(k);
  TheoreticalSamples out;
  const double log_j = 2.0 * lipschitz * lipschitz * p.t_k / p.delta_k;
  out.log_n_k = std::log(8.0) + log_j - std::log(p.alpha_k);

  if (out.log_n_k > std::log(2.0) * 62) {
    out.n_k = std::numeric_limits<long>::max();
  } else {
    out.n_k = static_cast<long>(std::ceil(8.0 * std::exp(log_j) / p.alpha_k));
  }

  const double ntd = n * p.t_k * p.delta_k;
  if (log_j > kExpOverflow) {
    out.summand = std::numeric_limits<double>::infinity();
  } else {
    const double j = std::exp(log_j);
    const double root = 2.0 * std::sqrt(ntd) + 3.0 * lipschitz * p.t_k;
    const double m = ntd + root * root;
    const long n_used = (mode_ == Mode::PracticalFixedN) ? samples_ : out.n_k;
    out.summand = std::sqrt(8.0 * j * m / (p.alpha_k * static_cast<double>(n_used))) + std::sqrt(ntd);
  }
  return out;
}

Schedule::SummabilityReport Schedule::summability_report(int n, double lipschitz,
                                                         int horizon) const {
  if (horizon < 1) throw InvalidIteration("summability_report: horizon must be >= 1");
  SummabilityReport rep;
  rep.alpha_partial.reserve(horizon);
  rep.sqrt_delta_partial.reserve(horizon);
  rep.summand_partial.reserve(horizon);

  double sa = 0.0, sd = 0.0, sb = 0.0;
  for (int k = 1; k <= horizon; ++k) {
    const ScheduleParams p = params_at(k);
    sa += p.alpha_k;
    sd += std::sqrt(p.delta_k);
    const double b = theoretical_n_at(k, n, lipschitz).summand;
    sb += b;
    rep.alpha_partial.push_back(sa);
    rep.sqrt_delta_partial.push_back(sd);
    rep.summand_partial.push_back(sb);
  }

  // p-series criteria on the closed-form exponents: alpha_k = k^-(p+2) is
  // always summable for p > 0; sqrt(delta_k) decays like k^-(p+1)/2 for the
  // diminishing schedule and k^-(2+p)/2 for the fixed-t schedules.
  rep.alpha_summable = (p_ + 2.0) > 1.0;
  const double sqrt_delta_exp =
      (mode_ == Mode::DiminishingT) ? (p_ + 1.0) / 2.0 : (2.0 + p_) / 2.0;
  rep.sqrt_delta_summable = sqrt_delta_exp > 1.0;
  // integral comparison: sum_{k>K} k^-q <= K^(1-q)/(q-1) for q > 1
  if (rep.sqrt_delta_summable) {
    const double scale = (mode_ == Mode::DiminishingT) ? 1.0 : std::sqrt(delta0_);
    rep.sqrt_delta_tail_bound =
        scale * std::pow(static_cast<double>(horizon), 1.0 - sqrt_delta_exp) / (sqrt_delta_exp - 1.0);
  } else {
    rep.sqrt_delta_tail_bound = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace hjsplit
