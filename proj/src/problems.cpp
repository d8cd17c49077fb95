#include "hjsplit/problems.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "hjsplit/errors.hpp"
#include "hjsplit/exact_prox.hpp"
#include "hjsplit/rng.hpp"

namespace hjsplit {

std::string scale_name(Scale s) { return s == Scale::Paper ? "paper" : "desk"; }

Scale parse_scale(const std::string& s) {
  if (s == "paper") return Scale::Paper;
  if (s == "desk") return Scale::Desk;
  throw ConfigError("unknown scale '" + s + "' (expected paper|desk)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat gaussian_design(int rows, int cols, RngStream& rng) {
  Mat X(rows, cols);
  const double s = 1.0 / std::sqrt(static_cast<double>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = s * rng.normal();
  return X;
}

Vec add_noise(const Vec& signal, double rel_sigma, RngStream& rng, double* sigma_out) {
  const double rms = std::sqrt(signal.squaredNorm() / signal.size());
  const double sigma = rel_sigma * (rms > 0 ? rms : 1.0);
  Vec out = signal;
  for (int i = 0; i < out.size(); ++i) out(i) += sigma * rng.normal();
  if (sigma_out) *sigma_out = sigma;
  return out;
}

double linf_norm(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

double ProblemInstance::objective_finite(const Point& b) const {
  double total = 0.0;
  if (smooth_term) total += smooth_term->eval(b);
  for (const auto& term : terms) {
    const double v = term.eval(b);
    if (std::isfinite(v)) total += v;
  }
  return total;
}

double ProblemInstance::violation(const Point& b) const {
  // Only the nonnegativity indicator appears in the benchmark set.
  double sq = 0.0;
  bool any = false;
  for (const auto& term : terms) {
    if (term.name != "nonneg_indicator") continue;
    any = true;
    for (int i = 0; i < b.dim(); ++i)
      if (b[i] < 0.0) sq += b[i] * b[i];
  }
  return any ? std::sqrt(sq) : 0.0;
}

std::uint64_t ProblemInstance::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const double* data, std::size_t count) {
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < count * sizeof(double); ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  feed(observed.vec().data(), observed.vec().size());
  feed(ground_truth.vec().data(), ground_truth.vec().size());
  if (!lambdas.empty()) feed(lambdas.data(), lambdas.size());
  return h;
}

ZeroOrderFunction make_l1_term(int dim, double lambda) {
  ZeroOrderFunction f;
  f.name = "l1";
  f.eval = [lambda](const Point& b) { return lambda * b.vec().cwiseAbs().sum(); };
  f.lipschitz_f = lambda * std::sqrt(static_cast<double>(dim));
  f.exact_prox = [lambda](const Point& x, double t) { return soft_threshold(x, t * lambda); };
  return f;
}

ZeroOrderFunction make_zero_term() {
  ZeroOrderFunction f;
  f.name = "zero";
  f.eval = [](const Point&) { return 0.0; };
  f.lipschitz_f = 0.0;
  f.gradient = [](const Point& x) { return x.with_data(Vec::Zero(x.dim())); };
  f.lipschitz_grad = 0.0;
  f.exact_prox = [](const Point& x, double) { return x; };
  return f;
}

ZeroOrderFunction make_nonneg_indicator() {
  ZeroOrderFunction f;
  f.name = "nonneg_indicator";
  f.eval = [](const Point& b) {
    for (int i = 0; i < b.dim(); ++i)
      if (b[i] < 0.0) return kInf;
    return 0.0;
  };
  f.exact_prox = [](const Point& x, double) { return project_nonnegative(x); };
  return f;
}

ZeroOrderFunction make_quadratic_term(const LinearOperator& X, const Point& y) {
  ZeroOrderFunction f;
  f.name = "quadratic";
  const Point yy = y;
  f.eval = [X, yy](const Point& b) {
    return 0.5 * (X.apply(b).vec() - yy.vec()).squaredNorm();
  };
  f.gradient = [X, yy](const Point& b) {
    return b.with_data(X.apply_transpose(Point(X.apply(b).vec() - yy.vec())).vec());
  };
  const double opn = X.operator_norm();
  f.lipschitz_grad = opn * opn;
  // one resolvent factorization per prox parameter, built on first use
  auto cache = std::make_shared<std::map<double, std::shared_ptr<QuadraticResolvent>>>();
  f.exact_prox = [X, yy, cache](const Point& x, double t) {
    auto it = cache->find(t);
    if (it == cache->end())
      it = cache->emplace(t, std::make_shared<QuadraticResolvent>(X, yy, t)).first;
    return it->second->apply(x);
  };
  return f;
}

ZeroOrderFunction make_identity_quadratic_term(const Point& y) {
  ZeroOrderFunction f;
  f.name = "quadratic_identity";
  const Point yy = y;
  f.eval = [yy](const Point& b) { return 0.5 * (b.vec() - yy.vec()).squaredNorm(); };
  f.gradient = [yy](const Point& b) { return b.with_data(b.vec() - yy.vec()); };
  f.lipschitz_grad = 1.0;
  f.exact_prox = [yy](const Point& x, double t) {
    return x.with_data((x.vec() + t * yy.vec()) / (1.0 + t));
  };
  return f;
}

ZeroOrderFunction make_group_term(const GroupSet& gs, double lambda) {
  ZeroOrderFunction f;
  f.name = gs.overlapping ? "overlapping_group_l2" : "group_l2";
  const GroupSet g = gs;
  f.eval = [g, lambda](const Point& b) {
    double total = 0.0;
    for (std::size_t k = 0; k < g.groups.size(); ++k) {
      double sq = 0.0;
      for (int idx : g.groups[k]) sq += b[idx] * b[idx];
      total += g.weights[k] * std::sqrt(sq);
    }
    return lambda * total;
  };
  {
    // Cauchy-Schwarz over groups gives L <= lambda * sqrt(sum w_g^2) for a
    // partition; overlaps add a sqrt(max multiplicity) factor.
    double wsq = 0.0;
    for (double w : g.weights) wsq += w * w;
    int max_mult = 1;
    if (gs.overlapping) {
      std::map<int, int> mult;
      for (const auto& grp : g.groups)
        for (int idx : grp) max_mult = std::max(max_mult, ++mult[idx]);
    }
    f.lipschitz_f = lambda * std::sqrt(wsq * max_mult);
  }
  if (!gs.overlapping) {
    f.exact_prox = [g, lambda](const Point& x, double t) {
      return group_soft_threshold(x, g.groups, t * lambda, g.weights);
    };
  }
  return f;
}

ZeroOrderFunction make_composite_l1_term(const LinearOperator& D, double lambda) {
  ZeroOrderFunction f;
  f.name = "l1_of_D";
  f.eval = [D, lambda](const Point& b) { return lambda * D.apply(b).vec().cwiseAbs().sum(); };
  f.lipschitz_f = lambda * std::sqrt(static_cast<double>(D.rows())) * D.operator_norm();
  return f;
}

ZeroOrderFunction make_pair_norm_term(int pairs, double lambda) {
  ZeroOrderFunction f;
  f.name = "pair_l21";
  f.eval = [pairs, lambda](const Point& u) {
    double total = 0.0;
    for (int i = 0; i < pairs; ++i) total += std::hypot(u[i], u[pairs + i]);
    return lambda * total;
  };
  f.lipschitz_f = lambda * std::sqrt(static_cast<double>(pairs));
  f.exact_prox = [pairs, lambda](const Point& u, double t) {
    Vec out = u.vec();
    const double thr = t * lambda;
    for (int i = 0; i < pairs; ++i) {
      const double norm = std::hypot(out(i), out(pairs + i));
      const double scale = (norm > thr) ? 1.0 - thr / norm : 0.0;
      out(i) *= scale;
      out(pairs + i) *= scale;
    }
    return u.with_data(std::move(out));
  };
  return f;
}

ProblemInstance gen_lasso(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x1a550001ULL));
  const int n = (scale == Scale::Paper) ? 250 : 50;
  const int p = (scale == Scale::Paper) ? 500 : 100;
  const int support_lo = (scale == Scale::Paper) ? 400 : 40;
  const int support_hi = (scale == Scale::Paper) ? 410 : 45;

  Mat X = gaussian_design(n, p, rng);
  Vec beta = Vec::Zero(p);
  for (int i = support_lo; i < support_hi; ++i) beta(i) = 1.0;
  double sigma = 0.0;
  Vec y = add_noise(X * beta, 0.1, rng, &sigma);

  ProblemInstance inst;
  inst.name = "lasso";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = LinearOperator::dense(X);
  inst.observed = Point(y);
  inst.ground_truth = Point(beta);
  const double lambda = 0.01 * linf_norm(X.transpose() * y);
  inst.lambdas = {lambda};
  inst.smooth_term = make_quadratic_term(*inst.design, inst.observed);
  inst.terms = {make_l1_term(p, lambda)};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["lambda_rule"] = "0.01 * linf(X'y)";
  inst.metadata["column_scale"] = "1/sqrt(n)";
  return inst;
}

ProblemInstance gen_sparse_group_lasso(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x56700002ULL));
  const int n = (scale == Scale::Paper) ? 300 : 60;
  const int g_count = (scale == Scale::Paper) ? 6 : 4;
  const int g_size = (scale == Scale::Paper) ? 10 : 5;
  const int p = g_count * g_size;

  Mat X = gaussian_design(n, p, rng);
  Vec beta = Vec::Zero(p);
  // groups 0 and 2 active, with a dead entry inside each active group
  for (int g : {0, 2}) {
    for (int j = 0; j < g_size; ++j) beta(g * g_size + j) = (j % 2 == 0) ? 1.0 : -0.5;
    beta(g * g_size + g_size - 1) = 0.0;
  }
  double sigma = 0.0;
  Vec y = add_noise(X * beta, 0.1, rng, &sigma);

  GroupSet gs;
  gs.overlapping = false;
  for (int g = 0; g < g_count; ++g) {
    std::vector<int> idx(g_size);
    for (int j = 0; j < g_size; ++j) idx[j] = g * g_size + j;
    gs.groups.push_back(std::move(idx));
    gs.weights.push_back(1.0);
  }

  ProblemInstance inst;
  inst.name = "sglasso";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = LinearOperator::dense(X);
  inst.observed = Point(y);
  inst.ground_truth = Point(beta);
  const double scale_l = linf_norm(X.transpose() * y);
  inst.lambdas = {0.05 * scale_l, 0.05 * scale_l};
  inst.groups = gs;
  inst.smooth_term = make_quadratic_term(*inst.design, inst.observed);
  inst.terms = {make_group_term(gs, inst.lambdas[0]), make_l1_term(p, inst.lambdas[1])};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["lambda_rule"] = "0.05 * linf(X'y) each";
  return inst;
}

ProblemInstance gen_trend_filtering(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x73e4d003ULL));
  const int n = (scale == Scale::Paper) ? 256 : 64;

  Vec signal(n);
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    signal(i) = std::sqrt(u * (1.0 - u)) * std::sin(2.1 * M_PI / (u + 0.05));
  }
  double sigma = 0.0;
  Vec y = add_noise(signal, 0.1, rng, &sigma);

  ProblemInstance inst;
  inst.name = "trend";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.structure = LinearOperator::difference(3, n);
  inst.observed = Point(y);
  inst.ground_truth = Point(signal);
  const double lambda = 0.0007;
  inst.lambdas = {lambda};
  inst.smooth_term = make_identity_quadratic_term(inst.observed);
  inst.terms = {make_composite_l1_term(*inst.structure, lambda)};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["lambda_rule"] = "0.0007 fixed (desk calibration)";
  return inst;
}

ProblemInstance gen_multitask(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x0117a004ULL));
  const int n = (scale == Scale::Paper) ? 50 : 20;
  const int p = (scale == Scale::Paper) ? 30 : 12;
  const int q = (scale == Scale::Paper) ? 9 : 5;
  const int rank = (scale == Scale::Paper) ? 3 : 2;

  Mat X = gaussian_design(n, p, rng);
  Mat U(p, rank), V(q, rank);
  for (int i = 0; i < p; ++i)
    for (int r = 0; r < rank; ++r) U(i, r) = rng.normal();
  for (int j = 0; j < q; ++j)
    for (int r = 0; r < rank; ++r) V(j, r) = rng.normal();
  Mat B = U * V.transpose() / std::sqrt(static_cast<double>(rank * p));

  Mat noise_free = X * B;
  Vec flat_signal(n * q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < q; ++j) flat_signal(i * q + j) = noise_free(i, j);
  double sigma = 0.0;
  Vec y_flat = add_noise(flat_signal, 0.1, rng, &sigma);
  Mat Y(n, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < q; ++j) Y(i, j) = y_flat(i * q + j);

  ProblemInstance inst;
  inst.name = "multitask";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = LinearOperator::dense(X);
  inst.observed = Point::from_matrix(Y);
  inst.ground_truth = Point::from_matrix(B);
  const double l1n = 0.02, lrow = 0.01, lcol = 0.01;
  inst.lambdas = {l1n, lrow, lcol};

  // data fidelity fused with the nuclear norm: one nonsmooth term
  ZeroOrderFunction fused;
  fused.name = "quad_plus_nuclear";
  fused.eval = [X, Y, l1n, p, q](const Point& b) {
    const Mat Bm = b.as_matrix();
    const double quad = 0.5 * (X * Bm - Y).squaredNorm();
    Eigen::JacobiSVD<Mat> svd(Bm);
    return quad + l1n * svd.singularValues().sum();
  };

  ZeroOrderFunction rowcol;
  rowcol.name = "row_plus_col_groups";
  rowcol.eval = [lrow, lcol, p, q](const Point& b) {
    const Mat Bm = b.as_matrix();
    double total = 0.0;
    for (int i = 0; i < p; ++i) total += lrow * Bm.row(i).norm();
    for (int j = 0; j < q; ++j) total += lcol * Bm.col(j).norm();
    return total;
  };

  inst.terms = {std::move(fused), std::move(rowcol)};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["rank"] = std::to_string(rank);
  return inst;
}

ProblemInstance gen_tv_denoise(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x70de0005ULL));
  const int hw = (scale == Scale::Paper) ? 64 : 32;

  // piecewise-constant scene: background, bright rectangle, mid-gray disk
  Mat img = Mat::Zero(hw, hw);
  for (int i = hw / 8; i < hw / 2; ++i)
    for (int j = hw / 8; j < hw / 2; ++j) img(i, j) = 1.0;
  const double cx = 0.68 * hw, cy = 0.64 * hw, rad = 0.18 * hw;
  for (int i = 0; i < hw; ++i)
    for (int j = 0; j < hw; ++j)
      if ((i - cy) * (i - cy) + (j - cx) * (j - cx) <= rad * rad) img(i, j) = 0.5;

  LinearOperator blur = LinearOperator::blur3x3(hw, hw);
  Point truth = Point::from_matrix(img);
  Vec blurred = blur.apply(truth).vec();
  double sigma = 0.0;
  Vec y = add_noise(blurred, 0.1, rng, &sigma);

  ProblemInstance inst;
  inst.name = "tv";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = blur;
  inst.structure = LinearOperator::image_gradient(hw, hw);
  inst.observed = Point(y, hw, hw);
  inst.ground_truth = truth;
  const double lambda = 0.02;
  inst.lambdas = {lambda};
  inst.smooth_term = make_quadratic_term(blur, inst.observed);

  const LinearOperator grad = *inst.structure;
  ZeroOrderFunction tv;
  tv.name = "isotropic_tv";
  const int pairs = hw * hw;
  tv.eval = [grad, lambda, pairs](const Point& b) {
    const Vec u = grad.apply(b).vec();
    double total = 0.0;
    for (int i = 0; i < pairs; ++i) total += std::hypot(u(i), u(pairs + i));
    return lambda * total;
  };
  tv.lipschitz_f = lambda * std::sqrt(static_cast<double>(pairs)) * grad.operator_norm();
  inst.terms = {std::move(tv)};

  inst.pdhg_g = make_pair_norm_term(pairs, lambda);
  ZeroOrderFunction gstar;
  gstar.name = "pair_ball_indicator";
  gstar.eval = [pairs, lambda](const Point& u) {
    for (int i = 0; i < pairs; ++i)
      if (std::hypot(u[i], u[pairs + i]) > lambda + 1e-12) return kInf;
    return 0.0;
  };
  gstar.exact_prox = [lambda](const Point& u, double) { return project_pair_ball(u, lambda); };
  inst.pdhg_gstar = std::move(gstar);

  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["blur"] = "3x3 uniform, replicate boundary (stand-in kernel)";
  return inst;
}

ProblemInstance gen_nonneg_lasso(Scale scale, std::uint64_t seed) {
  RngStream rng(mix64(seed ^ 0x40be0006ULL));
  const int n = (scale == Scale::Paper) ? 250 : 60;
  const int p = (scale == Scale::Paper) ? 500 : 120;
  const int positives = (scale == Scale::Paper) ? 50 : 12;

  Mat X = gaussian_design(n, p, rng);
  Vec beta = Vec::Zero(p);
  // first `positives` slots of a fixed permutation-free layout: spread them
  const int stride = p / positives;
  for (int k = 0; k < positives; ++k) beta(k * stride) = 0.5 + rng.uniform01();
  double sigma = 0.0;
  Vec y = add_noise(X * beta, 0.1, rng, &sigma);

  ProblemInstance inst;
  inst.name = "nnlasso";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = LinearOperator::dense(X);
  inst.observed = Point(y);
  inst.ground_truth = Point(beta);
  const double lambda = 0.05 * linf_norm(X.transpose() * y);
  inst.lambdas = {lambda};
  inst.smooth_term = make_quadratic_term(*inst.design, inst.observed);
  inst.terms = {make_l1_term(p, lambda), make_nonneg_indicator()};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["lambda_rule"] = "0.05 * linf(X'y)";
  return inst;
}

ProblemInstance gen_overlapping_group_lasso(Scale scale, std::uint64_t seed,
                                            bool degenerate_partition) {
  RngStream rng(mix64(seed ^ 0x09fa0007ULL));
  const int p = (scale == Scale::Paper) ? 500 : 100;
  const int n = (scale == Scale::Paper) ? 250 : 50;
  const int width = 10;
  const int stride = degenerate_partition ? width : 5;

  Mat X = gaussian_design(n, p, rng);
  Vec beta = Vec::Zero(p);
  // two active windows aligned with group boundaries
  for (int j = 10; j < 20; ++j) beta(j) = 1.0;
  for (int j = p / 2; j < p / 2 + 10; ++j) beta(j) = -0.8;
  double sigma = 0.0;
  Vec y = add_noise(X * beta, 0.1, rng, &sigma);

  GroupSet gs;
  gs.overlapping = !degenerate_partition;
  for (int start = 0; start + width <= p; start += stride) {
    std::vector<int> idx(width);
    for (int j = 0; j < width; ++j) idx[j] = start + j;
    gs.groups.push_back(std::move(idx));
    gs.weights.push_back(1.0);
  }

  ProblemInstance inst;
  inst.name = degenerate_partition ? "oglasso_partition" : "oglasso";
  inst.scale = scale;
  inst.gen_seed = seed;
  inst.design = LinearOperator::dense(X);
  inst.observed = Point(y);
  inst.ground_truth = Point(beta);
  const double scale_l = linf_norm(X.transpose() * y);
  inst.lambdas = {0.01 * scale_l, 0.02 * scale_l};
  inst.groups = gs;
  inst.smooth_term = make_quadratic_term(*inst.design, inst.observed);
  inst.terms = {make_group_term(gs, inst.lambdas[0]), make_l1_term(p, inst.lambdas[1])};
  inst.metadata["noise_sigma"] = std::to_string(sigma);
  inst.metadata["lambda_rule"] = "0.01 / 0.02 * linf(X'y)";
  inst.metadata["groups"] = std::to_string(gs.groups.size()) + " windows of " +
                            std::to_string(width) + ", stride " + std::to_string(stride);
  return inst;
}

ProblemInstance gen_by_name(const std::string& name, Scale scale, std::uint64_t seed) {
  if (name == "lasso") return gen_lasso(scale, seed);
  if (name == "sglasso") return gen_sparse_group_lasso(scale, seed);
  if (name == "trend") return gen_trend_filtering(scale, seed);
  if (name == "multitask") return gen_multitask(scale, seed);
  if (name == "tv") return gen_tv_denoise(scale, seed);
  if (name == "nnlasso") return gen_nonneg_lasso(scale, seed);
  if (name == "oglasso") return gen_overlapping_group_lasso(scale, seed);
  throw ConfigError("unknown experiment '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"lasso", "sglasso", "trend", "multitask", "tv", "nnlasso", "oglasso"};
}

namespace {

void write_block(std::ofstream& out, const std::string& name, const Mat& m) {
  out << "block " << name << " " << m.rows() << " " << m.cols() << "\n";
}

void write_block_data(std::ofstream& out, const Mat& m) {
  static_assert(sizeof(double) == 8);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
}

Mat point_as_block(const Point& p) {
  if (p.is_matrix()) return p.as_matrix();
  Mat m(p.dim(), 1);
  for (int i = 0; i < p.dim(); ++i) m(i, 0) = p[i];
  return m;
}

}  // namespace

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_instance: cannot open " + path);
  out << "hjsplit-instance v1\n";
  out << "name " << inst.name << "\n";
  out << "scale " << scale_name(inst.scale) << "\n";
  out << "seed " << inst.gen_seed << "\n";
  out << "lambdas " << inst.lambdas.size();
  char buf[64];
  for (double l : inst.lambdas) {
    std::snprintf(buf, sizeof(buf), " %.17g", l);
    out << buf;
  }
  out << "\n";

  std::vector<std::pair<std::string, Mat>> blocks;
  if (inst.design && inst.design->kind() == LinearOperator::Kind::Dense)
    blocks.emplace_back("design", inst.design->materialize());
  blocks.emplace_back("observed", point_as_block(inst.observed));
  blocks.emplace_back("ground_truth", point_as_block(inst.ground_truth));

  for (const auto& [name, m] : blocks) write_block(out, name, m);
  out << "end\n";
  for (const auto& [name, m] : blocks) write_block_data(out, m);
  if (!out) throw Error("save_instance: write failed for " + path);
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_instance: cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "hjsplit-instance v1") throw Error("load_instance: bad magic in " + path);

  InstanceFile file;
  std::vector<std::tuple<std::string, int, int>> block_meta;
  while (std::getline(in, line)) {
    if (line == "end") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "name") ls >> file.name;
    else if (key == "scale") ls >> file.scale;
    else if (key == "seed") ls >> file.seed;
    else if (key == "lambdas") {
      std::size_t count;
      ls >> count;
      file.lambdas.resize(count);
      for (auto& l : file.lambdas) ls >> l;
    } else if (key == "block") {
      std::string name;
      int r, c;
      ls >> name >> r >> c;
      block_meta.emplace_back(name, r, c);
    } else {
      throw Error("load_instance: unknown header key '" + key + "'");
    }
  }
  for (const auto& [name, r, c] : block_meta) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        double v;
        in.read(reinterpret_cast<char*>(&v), sizeof(double));
        m(i, j) = v;
      }
    if (!in) throw Error("load_instance: truncated data in " + path);
    file.blocks.emplace_back(name, std::move(m));
  }
  return file;
}

}  // namespace hjsplit
