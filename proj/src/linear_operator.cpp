#include "hjsplit/linear_operator.hpp"

#include <cmath>

namespace hjsplit {

struct LinearOperator::Impl {
  Kind kind;
  int rows = 0, cols = 0;

  // Dense
  Mat m;
  // Difference
  int order = 0;
  // Composition
  std::shared_ptr<const Impl> outer, inner;
  // Image ops
  int img_h = 0, img_w = 0;

  mutable std::once_flag norm_once;
  mutable double cached_norm = 0.0;

  Vec apply(const Vec& x) const {
    switch (kind) {
      case Kind::Identity:
        return x;
      case Kind::Dense:
        return m * x;
      case Kind::Difference: {
        Vec v = x;
        for (int d = 0; d < order; ++d) {
          Vec w(v.size() - 1);
          for (int i = 0; i + 1 < v.size(); ++i) w(i) = v(i + 1) - v(i);
          v = std::move(w);
        }
        return v;
      }
      case Kind::Composition:
        return outer->apply(inner->apply(x));
      case Kind::ImageGradient: {
        const int h = img_h, w = img_w;
        Vec out = Vec::Zero(2 * h * w);
        for (int i = 0; i < h; ++i)
          for (int j = 0; j < w; ++j) {
            const int p = i * w + j;
            if (j + 1 < w) out(p) = x(p + 1) - x(p);            // horizontal
            if (i + 1 < h) out(h * w + p) = x(p + w) - x(p);    // vertical
          }
        return out;
      }
      case Kind::Conv3x3Uniform: {
        const int h = img_h, w = img_w;
        Vec out(h * w);
        for (int i = 0; i < h; ++i)
          for (int j = 0; j < w; ++j) {
            double acc = 0.0;
            for (int di = -1; di <= 1; ++di)
              for (int dj = -1; dj <= 1; ++dj) {
                int ii = std::min(std::max(i + di, 0), h - 1);
                int jj = std::min(std::max(j + dj, 0), w - 1);
                acc += x(ii * w + jj);
              }
            out(i * w + j) = acc / 9.0;
          }
        return out;
      }
    }
    throw Error("LinearOperator: unknown kind");
  }

  Vec apply_transpose(const Vec& y) const {
    switch (kind) {
      case Kind::Identity:
        return y;
      case Kind::Dense:
        return m.transpose() * y;
      case Kind::Difference: {
        // Adjoint of the d-fold forward difference, one order at a time.
        Vec v = y;
        for (int d = 0; d < order; ++d) {
          Vec w = Vec::Zero(v.size() + 1);
          for (int i = 0; i < v.size(); ++i) {
            w(i) -= v(i);
            w(i + 1) += v(i);
          }
          v = std::move(w);
        }
        return v;
      }
      case Kind::Composition:
        return inner->apply_transpose(outer->apply_transpose(y));
      case Kind::ImageGradient: {
        const int h = img_h, w = img_w;
        Vec out = Vec::Zero(h * w);
        for (int i = 0; i < h; ++i)
          for (int j = 0; j < w; ++j) {
            const int p = i * w + j;
            if (j + 1 < w) {
              out(p + 1) += y(p);
              out(p) -= y(p);
            }
            if (i + 1 < h) {
              out(p + w) += y(h * w + p);
              out(p) -= y(h * w + p);
            }
          }
        return out;
      }
      case Kind::Conv3x3Uniform: {
        const int h = img_h, w = img_w;
        Vec out = Vec::Zero(h * w);
        for (int i = 0; i < h; ++i)
          for (int j = 0; j < w; ++j) {
            const double v = y(i * w + j) / 9.0;
            for (int di = -1; di <= 1; ++di)
              for (int dj = -1; dj <= 1; ++dj) {
                int ii = std::min(std::max(i + di, 0), h - 1);
                int jj = std::min(std::max(j + dj, 0), w - 1);
                out(ii * w + jj) += v;
              }
          }
        return out;
      }
    }
    throw Error("LinearOperator: unknown kind");
  }

  double power_norm(int iters) const {
    RngStream rng(0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(rows) << 20) ^ cols);
    Vec v(cols);
    for (int i = 0; i < cols; ++i) v(i) = rng.normal();
    v.normalize();

    // Difference-type spectra cluster tightly at the top, which stalls plain
    // power iteration. For small operators, iterate on a repeatedly squared
    // (and renormalized) Gram matrix instead; the final Rayleigh step below
    // reads the singular value off the original operator either way.
    if (cols <= 512) {
      Mat gram = Mat::Zero(cols, cols);
      Vec e = Vec::Zero(cols);
      for (int j = 0; j < cols; ++j) {
        e(j) = 1.0;
        gram.col(j) = apply_transpose(apply(e));
        e(j) = 0.0;
      }
      for (int s = 0; s < 12; ++s) {
        const double scale = gram.norm();
        if (scale == 0.0) return 0.0;
        gram = (gram / scale) * (gram / scale);
      }
      for (int it = 0; it < iters; ++it) {
        Vec w = gram * v;
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
      }
      return std::sqrt(apply(v).squaredNorm());
    }

    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
      Vec w = apply_transpose(apply(v));
      double nw = w.norm();
      if (nw == 0.0) return 0.0;
      v = w / nw;
      sigma = std::sqrt(nw);
    }
    return sigma;
  }
};

LinearOperator LinearOperator::identity(int n) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Identity;
  impl->rows = impl->cols = n;
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::dense(Mat m) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Dense;
  impl->rows = static_cast<int>(m.rows());
  impl->cols = static_cast<int>(m.cols());
  impl->m = std::move(m);
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::difference(int order, int n) {
  if (order < 1 || n - order < 1)
    throw DimensionMismatch("difference: need 1 <= order < n, got order=" + std::to_string(order) +
                            " n=" + std::to_string(n));
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Difference;
  impl->rows = n - order;
  impl->cols = n;
  impl->order = order;
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::compose(LinearOperator outer, LinearOperator inner) {
  if (outer.cols() != inner.rows())
    throw DimensionMismatch("compose: inner rows " + std::to_string(inner.rows()) +
                            " vs outer cols " + std::to_string(outer.cols()));
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Composition;
  impl->rows = outer.rows();
  impl->cols = inner.cols();
  impl->outer = outer.impl_;
  impl->inner = inner.impl_;
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::image_gradient(int h, int w) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ImageGradient;
  impl->rows = 2 * h * w;
  impl->cols = h * w;
  impl->img_h = h;
  impl->img_w = w;
  return LinearOperator(std::move(impl));
}

LinearOperator LinearOperator::blur3x3(int h, int w) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Conv3x3Uniform;
  impl->rows = h * w;
  impl->cols = h * w;
  impl->img_h = h;
  impl->img_w = w;
  return LinearOperator(std::move(impl));
}

LinearOperator::Kind LinearOperator::kind() const { return impl_->kind; }
int LinearOperator::rows() const { return impl_->rows; }
int LinearOperator::cols() const { return impl_->cols; }

Point LinearOperator::apply(const Point& x) const {
  if (x.dim() != cols())
    throw DimensionMismatch("apply: operator is " + std::to_string(rows()) + "x" +
                            std::to_string(cols()) + ", point has dim " + std::to_string(x.dim()));
  return Point(impl_->apply(x.vec()));
}

Point LinearOperator::apply_transpose(const Point& y) const {
  if (y.dim() != rows())
    throw DimensionMismatch("apply_transpose: operator is " + std::to_string(rows()) + "x" +
                            std::to_string(cols()) + ", point has dim " + std::to_string(y.dim()));
  return Point(impl_->apply_transpose(y.vec()));
}

double LinearOperator::operator_norm() const {
  std::call_once(impl_->norm_once, [this] { impl_->cached_norm = impl_->power_norm(100); });
  return impl_->cached_norm;
}

Mat LinearOperator::materialize() const {
  Mat out(rows(), cols());
  Vec e = Vec::Zero(cols());
  for (int j = 0; j < cols(); ++j) {
    e(j) = 1.0;
    out.col(j) = impl_->apply(e);
    e(j) = 0.0;
  }
  return out;
}

}  // namespace hjsplit
