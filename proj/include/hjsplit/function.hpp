#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "hjsplit/point.hpp"

namespace hjsplit {

// An objective term that a solver can only evaluate pointwise. eval may
// return +inf for indicator terms. gradient / exact_prox are optional
// capabilities; Lipschitz constants are carried separately for the function
// itself (lipschitz_f, used by the Monte Carlo error bounds) and for its
// gradient (lipschitz_grad, used by step-size rules). The two are never
// interchangeable.
struct ZeroOrderFunction {
  std::string name;
  std::function<double(const Point&)> eval;
  std::function<Point(const Point&)> gradient;              // optional
  std::optional<double> lipschitz_f;
  std::optional<double> lipschitz_grad;
  std::function<Point(const Point&, double)> exact_prox;    // optional, (x, t)

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool has_exact_prox() const { return static_cast<bool>(exact_prox); }
};

// Pointwise sum of two terms. Gradients combine when both exist; the exact
// prox of a sum does not exist in general and is left empty. Lipschitz
// constants of the functions add (triangle inequality).
ZeroOrderFunction sum_of(const ZeroOrderFunction& a, const ZeroOrderFunction& b);

struct LipschitzEstimate {
  double value;
  bool heuristic;  // true when estimated from random secants rather than supplied
};

// Samples `pairs` random secants of f in the ball of radius `radius` around
// the origin and returns the largest slope seen. Indicator terms (+inf values)
// are skipped. Estimates are tagged heuristic.
LipschitzEstimate estimate_lipschitz(const ZeroOrderFunction& f, int dim, std::uint64_t seed,
                                     int pairs = 1000, double radius = 10.0);

// Which machinery evaluates prox_{tf} for a term inside a solver.
struct ProxBackend {
  enum class Kind { Exact, HJ, InnerLoopDisabled };
  Kind kind = Kind::Exact;

  static ProxBackend exact() { return ProxBackend{Kind::Exact}; }
  static ProxBackend hj() { return ProxBackend{Kind::HJ}; }

  // Exact requires the term to actually carry an exact prox.
  void validate_for(const ZeroOrderFunction& term) const;
};

}  // namespace hjsplit
