#include "hjsplit/exact_prox.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hjsplit/errors.hpp"

namespace hjsplit {

Point soft_threshold(const Point& x, double tau) {
  if (tau < 0.0) throw ConfigError("soft_threshold: tau must be >= 0");
  Vec out(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    const double v = x[i];
    out(i) = (v > tau) ? v - tau : (v < -tau ? v + tau : 0.0);
  }
  return x.with_data(std::move(out));
}

namespace {
void check_partition(int n, const std::vector<std::vector<int>>& groups) {
  std::vector<int> hits(n, 0);
  for (const auto& g : groups)
    for (int idx : g) {
      if (idx < 0 || idx >= n) throw InvalidPartition("group index out of range");
      ++hits[idx];
    }
  for (int i = 0; i < n; ++i)
    if (hits[i] != 1)
      throw InvalidPartition("groups must cover every index exactly once (index " +
                             std::to_string(i) + " covered " + std::to_string(hits[i]) + "x)");
}
}  // namespace

Point group_soft_threshold(const Point& x, const std::vector<std::vector<int>>& groups, double tau,
                           const std::vector<double>& weights) {
  if (weights.size() != groups.size())
    throw InvalidPartition("group_soft_threshold: one weight per group required");
  check_partition(x.dim(), groups);
  Vec out = x.vec();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double sq = 0.0;
    for (int idx : groups[g]) sq += x[idx] * x[idx];
    const double norm = std::sqrt(sq);
    const double scale = (norm > tau * weights[g]) ? 1.0 - tau * weights[g] / norm : 0.0;
    for (int idx : groups[g]) out(idx) *= scale;
  }
  return x.with_data(std::move(out));
}

Point project_nonnegative(const Point& x) {
  return x.with_data(x.vec().cwiseMax(0.0));
}

Point project_box(const Point& x, double lo, double hi) {
  if (lo > hi) throw InvalidBounds("project_box: lo > hi");
  return x.with_data(x.vec().cwiseMax(lo).cwiseMin(hi));
}

Point project_pair_ball(const Point& x, double radius) {
  if (radius < 0.0) throw InvalidBounds("project_pair_ball: radius must be >= 0");
  if (x.dim() % 2 != 0) throw DimensionMismatch("project_pair_ball: even dimension required");
  const int m = x.dim() / 2;
  Vec out = x.vec();
  for (int i = 0; i < m; ++i) {
    const double norm = std::hypot(out(i), out(m + i));
    if (norm > radius) {
      const double s = radius / norm;
      out(i) *= s;
      out(m + i) *= s;
    }
  }
  return x.with_data(std::move(out));
}

QuadraticResolvent::QuadraticResolvent(const LinearOperator& X, Point y, double t)
    : t_(t), n_(X.cols()) {
  if (t < 0.0) throw ConfigError("QuadraticResolvent: t must be >= 0");
  if (y.dim() != X.rows()) throw DimensionMismatch("QuadraticResolvent: y must match X rows");
  const Mat Xd = X.materialize();
  Mat system = Mat::Identity(n_, n_) + t * (Xd.transpose() * Xd);
  Eigen::LLT<Mat> llt(system);
  if (llt.info() != Eigen::Success)
    throw SingularSystem("QuadraticResolvent: factorization failed");  // cannot occur for t >= 0
  chol_ = llt.matrixL();
  shift_ = t * (Xd.transpose() * y.vec());
}

Point QuadraticResolvent::apply(const Point& x) const {
  if (x.dim() != n_) throw DimensionMismatch("QuadraticResolvent: bad input dimension");
  Vec rhs = x.vec() + shift_;
  // forward/back substitution against the stored Cholesky factor
  chol_.triangularView<Eigen::Lower>().solveInPlace(rhs);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
  return x.with_data(std::move(rhs));
}

Point prox_quadratic(const Point& x, double t, const LinearOperator& X, const Point& y) {
  return QuadraticResolvent(X, y, t).apply(x);
}

Point singular_value_threshold(const Point& x, double tau) {
  const Mat m = x.as_matrix();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vec s = svd.singularValues();
  for (int i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
  const Mat out = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
  return Point::from_matrix(out);
}

Point prox_conjugate_via_moreau(const std::function<Point(const Point&, double)>& prox_g,
                                const Point& y, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("prox_conjugate_via_moreau: sigma must be > 0");
  const Point inner = prox_g(y.with_data(y.vec() / sigma), 1.0 / sigma);
  return y.with_data(y.vec() - sigma * inner.vec());
}

TrendSubspaceProjector::TrendSubspaceProjector(const LinearOperator& D) : D_(D), n_(D.cols()) {
  const Mat Dd = D.materialize();
  Mat system = Mat::Identity(n_, n_) + Dd.transpose() * Dd;
  Eigen::LLT<Mat> llt(system);
  if (llt.info() != Eigen::Success)
    throw SingularSystem("TrendSubspaceProjector: I + D^T D not SPD");  // guarded; cannot occur
  chol_ = llt.matrixL();
}

std::pair<Point, Point> TrendSubspaceProjector::apply(const Point& beta0, const Point& w0) const {
  if (beta0.dim() != n_ || w0.dim() != D_.rows())
    throw DimensionMismatch("TrendSubspaceProjector: inconsistent dimensions");
  Vec rhs = beta0.vec() + D_.apply_transpose(w0).vec();
  chol_.triangularView<Eigen::Lower>().solveInPlace(rhs);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
  Point beta = beta0.with_data(std::move(rhs));
  Point w = D_.apply(beta);
  return {std::move(beta), std::move(w)};
}

std::pair<Point, Point> subspace_projection_trend(const Point& beta0, const Point& w0,
                                                  const LinearOperator& D) {
  return TrendSubspaceProjector(D).apply(beta0, w0);
}

namespace {

double prox_objective(const ZeroOrderFunction& f, const Point& x, double t, const Vec& z) {
  const double fz = f.eval(x.with_data(z));
  return fz + (z - x.vec()).squaredNorm() / (2.0 * t);
}

// Minimizes the prox objective over the coordinates listed in `dims` (the
// others held fixed) by golden section at each level: partial minimization of
// the jointly convex objective stays convex, so every level is unimodal.
// Indicator terms appear as +inf plateaus whose edges are bisected first.
double nested_golden_min(const ZeroOrderFunction& f, const Point& x, double t, Vec& z,
                         const std::vector<int>& dims, std::size_t level, double reach,
                         long& evals, long budget) {
  if (level == dims.size()) {
    if (++evals > budget) throw BudgetExhausted("brute_force_prox: polish budget exhausted");
    return prox_objective(f, x, t, z);
  }
  const int dim = dims[level];

  auto value_at = [&](double v) {
    Vec saved = z;
    z(dim) = v;
    const double out = nested_golden_min(f, x, t, z, dims, level + 1, reach, evals, budget);
    z = saved;
    return out;
  };

  const double center = z(dim);
  double lo = center - reach, hi = center + reach;
  double center_val = value_at(center);
  if (!std::isfinite(center_val)) {
    // the feasible set may not contain the center; reseed on a coarse scan
    double seed = center, seed_val = center_val;
    for (int i = 0; i <= 32; ++i) {
      const double v = lo + (hi - lo) * i / 32.0;
      const double val = value_at(v);
      if (val < seed_val) {
        seed_val = val;
        seed = v;
      }
    }
    if (!std::isfinite(seed_val)) return seed_val;  // nothing feasible at this level
    lo = seed - 2.0 * reach / 16.0;
    hi = seed + 2.0 * reach / 16.0;
    center_val = seed_val;
    z(dim) = seed;
  }

  // pull infinite bracket ends in toward the known-feasible center
  auto edge = [&](double outside) {
    if (std::isfinite(value_at(outside))) return outside;
    double feas = z(dim), infeas = outside;
    for (int it = 0; it < 46; ++it) {
      const double mid = 0.5 * (feas + infeas);
      if (std::isfinite(value_at(mid))) feas = mid;
      else infeas = mid;
    }
    return feas;
  };
  lo = edge(lo);
  hi = edge(hi);

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - golden * (hi - lo), b = lo + golden * (hi - lo);
  double fa = value_at(a), fb = value_at(b);
  for (int it = 0; it < 56; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - golden * (hi - lo);
      fa = value_at(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + golden * (hi - lo);
      fb = value_at(b);
    }
  }
  const double vbest = 0.5 * (lo + hi);
  double final_val = value_at(vbest);
  double final_v = vbest;
  if (center_val < final_val) {
    final_val = center_val;
    final_v = center;
  }
  z(dim) = final_v;
  // rerun the deeper levels so z carries the arg min, not just the value
  if (level + 1 < dims.size()) {
    Vec keep = z;
    const double recheck = nested_golden_min(f, x, t, z, dims, level + 1, reach, evals, budget);
    if (recheck > final_val + 1e-12) z = keep;
  }
  return final_val;
}

Point grid_prox(const ZeroOrderFunction& f, const Point& x, double t, long budget) {
  const int n = x.dim();
  const int pts = 33;
  long evals = 0;
  Vec center = x.vec();
  double radius = 2.0 * (1.0 + x.vec().cwiseAbs().maxCoeff());
  Vec best = center;
  double best_val = std::numeric_limits<double>::infinity();

  for (int pass = 0; pass < 3; ++pass) {
    const long total = static_cast<long>(std::pow(pts, n));
    if (evals + total > budget) throw BudgetExhausted("brute_force_prox: grid budget exhausted");
    for (long c = 0; c < total; ++c) {
      Vec z(n);
      long rem = c;
      for (int j = 0; j < n; ++j) {
        const int step = static_cast<int>(rem % pts);
        rem /= pts;
        z(j) = center(j) - radius + 2.0 * radius * step / (pts - 1);
      }
      const double val = prox_objective(f, x, t, z);
      ++evals;
      if (val < best_val) {
        best_val = val;
        best = z;
      }
    }
    center = best;
    // a constrained coarse pass can land sqrt(n) grid cells off the optimum,
    // so keep the next radius comfortably above one coarse spacing
    radius *= 4.0 / (pts - 1);
  }

  // Polish with exact 2-d golden-section solves over coordinate planes; the
  // grid phase alone stalls along curved indicator boundaries. Block sweeps
  // over all pairs cover every pairwise coupling in the catalog.
  const double reach = 0.1 * (1.0 + x.vec().cwiseAbs().maxCoeff());
  auto solve_dims = [&](const std::vector<int>& dims) {
    Vec work = best;
    const double val = nested_golden_min(f, x, t, work, dims, 0, reach, evals, budget);
    if (val < best_val) {
      best_val = val;
      best = work;
    }
  };
  if (n == 1) {
    solve_dims({0});
  } else {
    for (int cycle = 0; cycle < 2; ++cycle)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) solve_dims({i, j});
  }
  return x.with_data(best);
}

Point nelder_mead_prox(const ZeroOrderFunction& f, const Point& x, double t, long budget) {
  const int n = x.dim();
  long evals = 0;
  auto phi = [&](const Vec& z) {
    ++evals;
    return prox_objective(f, x, t, z);
  };

  std::vector<Vec> simplex(n + 1, x.vec());
  std::vector<double> vals(n + 1);
  const double h = 0.5 * (1.0 + x.vec().cwiseAbs().maxCoeff());
  for (int i = 1; i <= n; ++i) simplex[i](i - 1) += h;
  for (int i = 0; i <= n; ++i) vals[i] = phi(simplex[i]);

  while (evals < budget) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double spread = 0.0;
    for (int i = 0; i <= n; ++i) spread = std::max(spread, (simplex[i] - simplex[best]).norm());
    if (spread < 1e-9) break;

    Vec centroid = Vec::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= n;

    Vec refl = centroid + (centroid - simplex[worst]);
    double refl_val = phi(refl);
    if (refl_val < vals[best]) {
      Vec expand = centroid + 2.0 * (centroid - simplex[worst]);
      double expand_val = phi(expand);
      if (expand_val < refl_val) {
        simplex[worst] = expand;
        vals[worst] = expand_val;
      } else {
        simplex[worst] = refl;
        vals[worst] = refl_val;
      }
    } else if (refl_val < vals[second]) {
      simplex[worst] = refl;
      vals[worst] = refl_val;
    } else {
      Vec contract = centroid + 0.5 * (simplex[worst] - centroid);
      double contract_val = phi(contract);
      if (contract_val < vals[worst]) {
        simplex[worst] = contract;
        vals[worst] = contract_val;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          vals[i] = phi(simplex[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  return x.with_data(simplex[best]);
}

}  // namespace

Point brute_force_prox(const ZeroOrderFunction& f, const Point& x, double t, long budget) {
  if (!(t > 0.0)) throw ConfigError("brute_force_prox: t must be > 0");
  if (x.dim() <= 3) return grid_prox(f, x, t, budget);
  return nelder_mead_prox(f, x, t, std::min<long>(budget, 100000));
}

std::vector<ProxCatalogEntry> prox_catalog() {
  std::vector<ProxCatalogEntry> cat;
  cat.push_back({"soft_threshold",
                 [](const Point& x, double t) { return soft_threshold(x, t); },
                 "l1 norm, any dimension"});
  cat.push_back({"project_nonnegative",
                 [](const Point& x, double) { return project_nonnegative(x); },
                 "indicator of the nonnegative orthant"});
  cat.push_back({"clamp_unit",
                 [](const Point& x, double) { return project_box(x, -1.0, 1.0); },
                 "indicator of the unit box"});
  cat.push_back({"pair_ball_unit",
                 [](const Point& x, double) { return project_pair_ball(x, 1.0); },
                 "indicator of per-pair unit l2 balls; even dimension"});
  cat.push_back({"group_soft_threshold_pair",
                 [](const Point& x, double t) {
                   std::vector<std::vector<int>> groups;
                   std::vector<double> w;
                   int i = 0;
                   for (; i + 1 < x.dim(); i += 2) {
                     groups.push_back({i, i + 1});
                     w.push_back(1.0);
                   }
                   if (i < x.dim()) {
                     groups.push_back({i});
                     w.push_back(1.0);
                   }
                   return group_soft_threshold(x, groups, t, w);
                 },
                 "group l2 norm over consecutive pairs"});
  return cat;
}

}  // namespace hjsplit
