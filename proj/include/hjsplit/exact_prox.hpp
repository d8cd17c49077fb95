#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hjsplit/function.hpp"
#include "hjsplit/linear_operator.hpp"
#include "hjsplit/point.hpp"

namespace hjsplit {

// Closed-form proximal operators used by the analytical baselines and the
// hybrid solver configurations.

// sign(x_i) * max(|x_i| - tau, 0)
Point soft_threshold(const Point& x, double tau);

// Blockwise shrinkage x_g * max(1 - tau*w_g/:x_g:, 0); zero-norm blocks map
// to zero. groups must partition the index set.
Point group_soft_threshold(const Point& x, const std::vector<std::vector<int>>& groups, double tau,
                           const std::vector<double>& weights);

Point project_nonnegative(const Point& x);

// Componentwise clamp to [lo, hi].
Point project_box(const Point& x, double lo, double hi);

// Treats x as a stacked pair field [a; b] and scales each (a_i, b_i) to
// Euclidean norm <= radius. Used for the isotropic TV dual.
Point project_pair_ball(const Point& x, double radius);

// Resolvent of z -> 0.5*:Xz - y:^2: solves (I + t X^T X) z = x + t X^T y.
// The factorization is built once per (X, t) and reused across iterations.
class QuadraticResolvent {
 public:
  QuadraticResolvent(const LinearOperator& X, Point y, double t);
  Point apply(const Point& x) const;
  double t() const { return t_; }

 private:
  Mat chol_;  // packed LLT of (I + t X^T X)
  Vec shift_; // t X^T y
  double t_;
  int n_;
};

// One-shot variant of the resolvent above.
Point prox_quadratic(const Point& x, double t, const LinearOperator& X, const Point& y);

// U softthresh(S, tau) V^T from a full SVD of the matrix-shaped point.
Point singular_value_threshold(const Point& x, double tau);

// Moreau identity: prox_{sigma g*}(y) = y - sigma * prox_{g/sigma}(y/sigma).
Point prox_conjugate_via_moreau(const std::function<Point(const Point&, double)>& prox_g,
                                const Point& y, double sigma);

// Projection onto {(beta, w) : w = D beta}, solving (I + D^T D) beta =
// beta0 + D^T w0 with a factorization cached across calls.
class TrendSubspaceProjector {
 public:
  explicit TrendSubspaceProjector(const LinearOperator& D);
  std::pair<Point, Point> apply(const Point& beta0, const Point& w0) const;

 private:
  const LinearOperator D_;
  Mat chol_;
  int n_;
};

std::pair<Point, Point> subspace_projection_trend(const Point& beta0, const Point& w0,
                                                  const LinearOperator& D);

// Derivative-free minimizer of f(z) + :z - x:^2 / (2t), used as the
// verification oracle for every catalog entry. For n <= 3: shrinking-grid
// seeding plus nested golden-section solves over coordinate planes;
// Nelder-Mead descent otherwise. Throws BudgetExhausted when the evaluation
// budget runs out before the target resolution.
Point brute_force_prox(const ZeroOrderFunction& f, const Point& x, double t, long budget = 400000);

struct ProxCatalogEntry {
  std::string name;
  std::function<Point(const Point&, double)> prox;  // (x, t)
  std::string domain_note;
};

// The named entries exercised by the oracle-equivalence suite.
std::vector<ProxCatalogEntry> prox_catalog();

}  // namespace hjsplit
