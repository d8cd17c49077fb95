#pragma once

#include <vector>

#include "hjsplit/errors.hpp"

namespace hjsplit {

struct ScheduleParams {
  double t_k = 0.0;
  double delta_k = 0.0;
  double alpha_k = 0.0;
};

// Per-iteration parameter sequences (k counted from 1).
//
//   DiminishingT:     t_k = 1/k, delta_k = 1/k^(p+1), alpha_k = 1/k^(p+2)
//   FixedT:           t fixed,  delta_k = delta0/k^(2+p), alpha_k = 1/k^(p+2)
//   PracticalFixedN:  FixedT deltas with a constant sample count N; the
//                     regime the benchmark runs actually use.
//
// alpha_k is clamped to at most 0.999 so the first iterates stay in (0,1).
class Schedule {
 public:
  enum class Mode { DiminishingT, FixedT, PracticalFixedN };

  static Schedule diminishing_t(double p);
  static Schedule fixed_t(double t, double p, double delta0);
  static Schedule practical_fixed_n(double t, int samples, double delta0, double p);

  Mode mode() const { return mode_; }
  double t() const { return t_; }
  double p() const { return p_; }
  double delta0() const { return delta0_; }
  int samples() const { return samples_; }

  ScheduleParams params_at(int k) const;

  struct TheoreticalSamples {
    long n_k = 0;          // ceil(8 J_k / alpha_k); LONG_MAX when the exponent overflows
    double log_n_k = 0.0;  // always finite
    double summand = 0.0;  // sqrt(8 J_k M_k / (alpha_k N_k)) + sqrt(n t_k delta_k), +inf on overflow
  };

  // Sample count demanded by the almost-sure convergence analysis at
  // iteration k, for dimension n and Lipschitz constant L.
  TheoreticalSamples theoretical_n_at(int k, int n, double lipschitz) const;

  struct SummabilityReport {
    std::vector<double> alpha_partial;        // partial sums of alpha_k
    std::vector<double> sqrt_delta_partial;   // partial sums of sqrt(delta_k)
    std::vector<double> summand_partial;      // partial sums of the bound summand
    bool alpha_summable = false;              // p-series criterion on the built-in formulas
    bool sqrt_delta_summable = false;
    double sqrt_delta_tail_bound = 0.0;       // integral bound on the tail past the horizon
  };

  SummabilityReport summability_report(int n, double lipschitz, int horizon) const;

 private:
  Mode mode_;
  double t_ = 0.0;
  double p_ = 1.0;
  double delta0_ = 0.1;
  int samples_ = 1000;
};

}  // namespace hjsplit
