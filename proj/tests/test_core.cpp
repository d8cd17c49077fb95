#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hjsplit/errors.hpp"
#include "hjsplit/function.hpp"
#include "hjsplit/linear_operator.hpp"
#include "hjsplit/point.hpp"
#include "hjsplit/problems.hpp"
#include "hjsplit/trace.hpp"
#include "oracles.hpp"

using namespace hjsplit;

TEST_CASE("dot product basics") {
  Point a(Vec{{1.0, 2.0}}), b(Vec{{3.0, 4.0}});
  CHECK(dot(a, b) == doctest::Approx(11.0));

  Point zero = Point::zeros(2);
  CHECK(dot(a, zero) == 0.0);

  Vec e1 = Vec::Zero(4);
  e1(0) = 1.0;
  CHECK(dot(Point(e1), Point(e1)) == 1.0);

  CHECK_THROWS_AS(dot(a, Point::zeros(3)), DimensionMismatch);
}

TEST_CASE("point validation and shape round-trip") {
  CHECK_THROWS_AS(Point(Vec{}), DimensionMismatch);
  Vec bad(2);
  bad << 1.0, std::nan("");
  auto make_point = [](const Vec& v) { return Point(v); };
  CHECK_THROWS_AS(make_point(bad), NumericalDivergence);
  bad(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_point(bad), NumericalDivergence);

  RngStream rng(7);
  Mat m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
  const Point p = Point::from_matrix(m);
  CHECK(p.rows() == 3);
  CHECK(p.cols() == 4);
  CHECK((p.as_matrix() - m).norm() == 0.0);  // flatten/unflatten is a bijection
}

TEST_CASE("operator apply examples") {
  const Point x(Vec{{1.0, 2.0, 3.0}});
  CHECK((LinearOperator::identity(3).apply(x).vec() - x.vec()).norm() == 0.0);

  const Point d = LinearOperator::difference(1, 3).apply(Point(Vec{{1.0, 3.0, 6.0}}));
  CHECK(d.dim() == 2);
  CHECK(d[0] == doctest::Approx(2.0));
  CHECK(d[1] == doctest::Approx(3.0));

  Mat m(2, 2);
  m << 1, 0, 0, 2;
  const Point y = LinearOperator::dense(m).apply(Point(Vec{{1.0, 1.0}}));
  CHECK(y[0] == doctest::Approx(1.0));
  CHECK(y[1] == doctest::Approx(2.0));

  CHECK_THROWS_AS(LinearOperator::identity(3).apply(Point::zeros(2)), DimensionMismatch);
  // order-d difference drops d entries
  CHECK(LinearOperator::difference(3, 10).apply(Point::zeros(10)).dim() == 7);
}

TEST_CASE("adjoint consistency for every operator kind") {
  RngStream rng(42);
  auto check_adjoint = [&](const LinearOperator& A) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point u = oracles::random_point(A.cols(), rng);
      const Point v = oracles::random_point(A.rows(), rng);
      const double lhs = dot(A.apply(u), v);
      const double rhs = dot(u, A.apply_transpose(v));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    }
  };

  check_adjoint(LinearOperator::identity(6));
  Mat m(4, 7);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 7; ++j) m(i, j) = rng.normal();
  check_adjoint(LinearOperator::dense(m));
  check_adjoint(LinearOperator::difference(1, 9));
  check_adjoint(LinearOperator::difference(3, 12));
  check_adjoint(
      LinearOperator::compose(LinearOperator::difference(1, 4), LinearOperator::dense(m)));
  check_adjoint(LinearOperator::image_gradient(5, 6));
  check_adjoint(LinearOperator::blur3x3(5, 6));
}

TEST_CASE("operator norms") {
  CHECK(LinearOperator::identity(5).operator_norm() == doctest::Approx(1.0).epsilon(1e-8));

  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  CHECK(LinearOperator::dense(diag).operator_norm() == doctest::Approx(3.0).epsilon(1e-6));

  const LinearOperator d3 = LinearOperator::difference(3, 256);
  const double svd_norm = oracles::largest_singular_value_svd(d3.materialize());
  CHECK(d3.operator_norm() == doctest::Approx(svd_norm).epsilon(1e-4));
  CHECK(d3.operator_norm() >= svd_norm - 1e-6);
}

TEST_CASE("composition dimensions") {
  Mat m = Mat::Zero(3, 5);
  for (int i = 0; i < 3; ++i) m(i, i) = i + 1.0;
  const LinearOperator ab =
      LinearOperator::compose(LinearOperator::difference(1, 3), LinearOperator::dense(m));
  CHECK(ab.rows() == 2);
  CHECK(ab.cols() == 5);
  CHECK_THROWS_AS(
      LinearOperator::compose(LinearOperator::identity(4), LinearOperator::identity(5)),
      DimensionMismatch);
}

TEST_CASE("gradient of the quadratic term passes a finite-difference check") {
  RngStream rng(11);
  Mat X(6, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
  const Point y = oracles::random_point(6, rng);
  const auto f = make_quadratic_term(LinearOperator::dense(X), y);

  for (int trial = 0; trial < 10; ++trial) {
    const Point x = oracles::random_point(4, rng, 2.0);
    const Vec fd = oracles::fd_gradient(f.eval, x);
    const Vec an = f.gradient(x).vec();
    CHECK((fd - an).norm() <= 1e-4 * (1.0 + an.norm()));
  }
}

TEST_CASE("prox optimality of catalog-backed terms") {
  RngStream rng(23);
  const auto l1 = make_l1_term(5, 0.7);
  const double t = 0.4;
  for (int trial = 0; trial < 5; ++trial) {
    const Point x = oracles::random_point(5, rng, 2.0);
    const Point y = l1.exact_prox(x, t);
    const double at_y = l1.eval(y) + (y.vec() - x.vec()).squaredNorm() / (2.0 * t);
    for (int i = 0; i < 100; ++i) {
      const Point u = Point(y.vec() + 0.3 * oracles::random_point(5, rng).vec());
      const double at_u = l1.eval(u) + (u.vec() - x.vec()).squaredNorm() / (2.0 * t);
      CHECK(at_u >= at_y - 1e-8);
    }
  }
}

TEST_CASE("lipschitz estimation is tagged heuristic and lands in range") {
  const int n = 8;
  const double lambda = 1.3;
  const auto l1 = make_l1_term(n, lambda);
  const auto est = estimate_lipschitz(l1, n, 99);
  CHECK(est.heuristic);
  CHECK(est.value <= lambda * std::sqrt(double(n)) + 1e-9);
  CHECK(est.value >= 0.5 * lambda);

  // indicator values are skipped rather than poisoning the estimate
  const auto ind = make_nonneg_indicator();
  const auto est2 = estimate_lipschitz(ind, n, 99);
  CHECK(est2.value == 0.0);
}

TEST_CASE("sum_of combines evals, gradients and constants") {
  const Point y = Point::ones(3);
  const auto a = make_identity_quadratic_term(y);
  const auto b = make_identity_quadratic_term(Point::zeros(3));
  const auto s = sum_of(a, b);
  const Point x(Vec{{2.0, 0.0, -1.0}});
  CHECK(s.eval(x) == doctest::Approx(a.eval(x) + b.eval(x)));
  CHECK((s.gradient(x).vec() - (a.gradient(x).vec() + b.gradient(x).vec())).norm() == 0.0);
  CHECK(*s.lipschitz_grad == doctest::Approx(2.0));
  CHECK_FALSE(s.has_exact_prox());
}

TEST_CASE("prox backend validation") {
  auto term = make_l1_term(3, 1.0);
  CHECK_NOTHROW(ProxBackend::exact().validate_for(term));
  term.exact_prox = nullptr;
  CHECK_THROWS_AS(ProxBackend::exact().validate_for(term), ConfigError);
  CHECK_NOTHROW(ProxBackend::hj().validate_for(term));
  ProxBackend inner{ProxBackend::Kind::InnerLoopDisabled};
  CHECK_THROWS_AS(inner.validate_for(term), ConfigError);
}

TEST_CASE("trace invariants") {
  Trace t;
  t.push(TraceRow{0, 1.0, std::nullopt, 0.0, 0.0, 0, 0.0, 0.0});
  t.push(TraceRow{1, 0.5, 0.1, 0.1, 0.1, 100, 1.0, 0.0});
  CHECK_THROWS_AS(t.push(TraceRow{1, 0.4, std::nullopt, 0.0, 0.0, 0, 0.0, 0.0}), Error);
  TraceRow bad{2, 0.4, -0.1, 0.0, 0.0, 0, 0.0, 0.0};
  CHECK_THROWS_AS(t.push(bad), Error);

  Trace t2;
  CHECK_THROWS_AS(t2.push(TraceRow{3, 1.0, std::nullopt, 0.0, 0.0, 0, 0.0, 0.0}), Error);
}
