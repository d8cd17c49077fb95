#pragma once

#include <Eigen/Dense>

#include "hjsplit/errors.hpp"
#include "hjsplit/rng.hpp"

namespace hjsplit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A dense point in R^n. Matrix-valued iterates (multitask B, TV images) are
// stored flattened in row-major order with the shape recorded, so every
// solver sees one vector type.
class Point {
 public:
  Point() = default;

  explicit Point(Vec v) : data_(std::move(v)), rows_(static_cast<int>(data_.size())), cols_(1) {
    validate();
  }

  Point(Vec v, int rows, int cols) : data_(std::move(v)), rows_(rows), cols_(cols) {
    if (rows_ * static_cast<long>(cols_) != data_.size())
      throw DimensionMismatch("Point: shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " does not match length " + std::to_string(data_.size()));
    validate();
  }

  static Point zeros(int n) { return Point(Vec::Zero(n)); }
  static Point ones(int n) { return Point(Vec::Ones(n)); }

  static Point from_matrix(const Mat& m) {
    Vec flat(m.size());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) flat(i * m.cols() + j) = m(i, j);
    return Point(std::move(flat), static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  }

  Mat as_matrix() const {
    Mat m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = data_(i * cols_ + j);
    return m;
  }

  static Point gaussian(int n, RngStream& rng) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    return Point(std::move(v));
  }

  int dim() const { return static_cast<int>(data_.size()); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_matrix() const { return cols_ > 1; }

  const Vec& vec() const { return data_; }
  double operator[](int i) const { return data_(i); }
  double norm() const { return data_.norm(); }

  // Constructors validate; this rebuilds a Point from a raw Eigen expression
  // while keeping the recorded shape.
  Point with_data(Vec v) const { return Point(std::move(v), rows_, cols_); }

 private:
  void validate() const {
    if (data_.size() < 1) throw DimensionMismatch("Point: dimension must be >= 1");
    if (!data_.allFinite()) throw NumericalDivergence("Point: non-finite entry on construction");
  }

  Vec data_;
  int rows_ = 0;
  int cols_ = 1;
};

inline double dot(const Point& a, const Point& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("dot: dimensions " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  return a.vec().dot(b.vec());
}

}  // namespace hjsplit
