#include "hjsplit/function.hpp"

#include <cmath>

#include "hjsplit/errors.hpp"
#include "hjsplit/rng.hpp"

namespace hjsplit {

ZeroOrderFunction sum_of(const ZeroOrderFunction& a, const ZeroOrderFunction& b) {
  ZeroOrderFunction s;
  s.name = a.name + "+" + b.name;
  auto ea = a.eval, eb = b.eval;
  s.eval = [ea, eb](const Point& x) { return ea(x) + eb(x); };
  if (a.has_gradient() && b.has_gradient()) {
    auto ga = a.gradient, gb = b.gradient;
    s.gradient = [ga, gb](const Point& x) {
      return x.with_data(ga(x).vec() + gb(x).vec());
    };
  }
  if (a.lipschitz_f && b.lipschitz_f) s.lipschitz_f = *a.lipschitz_f + *b.lipschitz_f;
  if (a.lipschitz_grad && b.lipschitz_grad) s.lipschitz_grad = *a.lipschitz_grad + *b.lipschitz_grad;
  return s;
}

LipschitzEstimate estimate_lipschitz(const ZeroOrderFunction& f, int dim, std::uint64_t seed,
                                     int pairs, double radius) {
  RngStream rng(seed);
  double best = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vec u(dim), v(dim);
    for (int j = 0; j < dim; ++j) u(j) = rng.normal();
    for (int j = 0; j < dim; ++j) v(j) = rng.normal();
    u *= radius * rng.uniform01() / u.norm();
    v *= radius * rng.uniform01() / v.norm();
    const double fu = f.eval(Point(u));
    const double fv = f.eval(Point(v));
    if (!std::isfinite(fu) || !std::isfinite(fv)) continue;
    const double gap = (u - v).norm();
    if (gap > 1e-12) best = std::max(best, std::abs(fu - fv) / gap);
  }
  return LipschitzEstimate{best, true};
}

void ProxBackend::validate_for(const ZeroOrderFunction& term) const {
  switch (kind) {
    case Kind::Exact:
      if (!term.has_exact_prox())
        throw ConfigError("ProxBackend: exact backend requested for '" + term.name +
                          "' but the term has no exact prox");
      return;
    case Kind::HJ:
      return;
    case Kind::InnerLoopDisabled:
      throw ConfigError("ProxBackend: inner-loop prox backends are not provided");
  }
}

}  // namespace hjsplit
