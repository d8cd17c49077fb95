#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hjsplit/function.hpp"
#include "hjsplit/linear_operator.hpp"
#include "hjsplit/point.hpp"

namespace hjsplit {

enum class Scale { Paper, Desk };

std::string scale_name(Scale s);
Scale parse_scale(const std::string& s);

struct GroupSet {
  std::vector<std::vector<int>> groups;
  std::vector<double> weights;
  bool overlapping = false;
};

// One benchmark instance: data, ground truth, objective terms, and whatever
// closed-form proxes exist for it. Regenerating with the same seed reproduces
// the data bit-exactly.
struct ProblemInstance {
  std::string name;
  Scale scale = Scale::Desk;
  std::uint64_t gen_seed = 0;

  std::optional<LinearOperator> design;     // X (regression) or blur (TV)
  std::optional<LinearOperator> structure;  // D (trend) or image gradient (TV)
  Point observed;
  Point ground_truth;
  std::vector<double> lambdas;
  std::optional<GroupSet> groups;

  std::vector<ZeroOrderFunction> terms;      // nonsmooth / indicator terms
  std::optional<ZeroOrderFunction> smooth_term;

  // PDHG plumbing for composite penalties g(A x): g on the transformed
  // variable and its Fenchel conjugate.
  std::optional<ZeroOrderFunction> pdhg_g;
  std::optional<ZeroOrderFunction> pdhg_gstar;

  std::map<std::string, std::string> metadata;

  // Sum of the smooth term and the finite penalty values; indicator values of
  // +inf are excluded (the violation hook reports them).
  double objective_finite(const Point& b) const;
  double violation(const Point& b) const;

  // FNV-1a over the observed / ground-truth bytes; identifies the instance in
  // run provenance.
  std::uint64_t content_hash() const;
};

ProblemInstance gen_lasso(Scale scale, std::uint64_t seed);
ProblemInstance gen_sparse_group_lasso(Scale scale, std::uint64_t seed);
ProblemInstance gen_trend_filtering(Scale scale, std::uint64_t seed);
ProblemInstance gen_multitask(Scale scale, std::uint64_t seed);
ProblemInstance gen_tv_denoise(Scale scale, std::uint64_t seed);
ProblemInstance gen_nonneg_lasso(Scale scale, std::uint64_t seed);
// degenerate_partition collapses the overlapping windows to stride = width,
// giving the non-overlapping problem the exact group prox applies to.
ProblemInstance gen_overlapping_group_lasso(Scale scale, std::uint64_t seed,
                                            bool degenerate_partition = false);

ProblemInstance gen_by_name(const std::string& name, Scale scale, std::uint64_t seed);
std::vector<std::string> problem_names();

// Term builders, shared by the generators and the per-term oracle tests.
ZeroOrderFunction make_l1_term(int dim, double lambda);
ZeroOrderFunction make_zero_term();
ZeroOrderFunction make_nonneg_indicator();
ZeroOrderFunction make_quadratic_term(const LinearOperator& X, const Point& y);
// 0.5*:b - y:^2 with prox (x + t y) / (1 + t)
ZeroOrderFunction make_identity_quadratic_term(const Point& y);
ZeroOrderFunction make_group_term(const GroupSet& gs, double lambda);
ZeroOrderFunction make_composite_l1_term(const LinearOperator& D, double lambda);
// lambda * sum_pairs :(u_i, u_{m+i}): on a stacked pair field, with its prox
ZeroOrderFunction make_pair_norm_term(int pairs, double lambda);

// Portable instance file: text header (name, dims, seed, lambdas) followed by
// row-major little-endian float64 blocks.
void save_instance(const ProblemInstance& inst, const std::string& path);

struct InstanceFile {
  std::string name;
  std::string scale;
  std::uint64_t seed = 0;
  std::vector<double> lambdas;
  std::vector<std::pair<std::string, Mat>> blocks;
};

InstanceFile load_instance(const std::string& path);

}  // namespace hjsplit
