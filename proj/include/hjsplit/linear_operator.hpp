#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "hjsplit/point.hpp"

namespace hjsplit {

// Linear maps used by the solvers: dense matrices, banded finite-difference
// matrices of a given order, identity, compositions, and two structured image
// operators (2-D forward-difference gradient and 3x3 uniform blur) that are
// only ever applied, never stored densely.
class LinearOperator {
 public:
  enum class Kind { Identity, Dense, Difference, Composition, ImageGradient, Conv3x3Uniform };

  static LinearOperator identity(int n);
  static LinearOperator dense(Mat m);
  // d-fold forward difference: maps length-n vectors to length n-d.
  static LinearOperator difference(int order, int n);
  static LinearOperator compose(LinearOperator outer, LinearOperator inner);
  // Stacked [Dx; Dy] forward differences of an h x w image (Neumann boundary),
  // output length 2*h*w.
  static LinearOperator image_gradient(int h, int w);
  // 3x3 uniform blur with replicate boundary on an h x w image.
  static LinearOperator blur3x3(int h, int w);

  Kind kind() const;
  int rows() const;
  int cols() const;

  Point apply(const Point& x) const;
  Point apply_transpose(const Point& y) const;

  // Largest singular value, estimated by 100 power iterations on A^T A with a
  // fixed deterministic start; cached after the first call.
  double operator_norm() const;

  // Explicit dense form; intended for small operators (tests, factorizations).
  Mat materialize() const;

  struct Impl;

 private:
  explicit LinearOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hjsplit
