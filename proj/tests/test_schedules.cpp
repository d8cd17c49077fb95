#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hjsplit/schedules.hpp"

using namespace hjsplit;

TEST_CASE("diminishing-t schedule formulas") {
  const Schedule s = Schedule::diminishing_t(1.0);
  const auto p2 = s.params_at(2);
  CHECK(p2.t_k == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2.delta_k == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p2.alpha_k == doctest::Approx(0.125).epsilon(1e-15));

  for (int k = 1; k <= 1000; k += 7) {
    const auto p = s.params_at(k);
    CHECK(p.t_k == 1.0 / double(k));  // bit-exact by construction
    CHECK(std::abs(p.t_k * k - 1.0) <= 1e-15);
    CHECK(p.alpha_k > 0.0);
    CHECK(p.alpha_k < 1.0);
    CHECK(p.delta_k > 0.0);
  }
  CHECK_THROWS_AS(s.params_at(0), InvalidIteration);
}

TEST_CASE("fixed-t schedule formulas and the alpha clamp") {
  const Schedule s = Schedule::fixed_t(0.1, 1.0, 1.0);
  const auto p1 = s.params_at(1);
  CHECK(p1.t_k == 0.1);
  CHECK(p1.delta_k == 1.0);
  CHECK(p1.alpha_k == doctest::Approx(0.999));  // k=1 raw value 1.0 is clamped

  for (int k = 1; k <= 200; ++k) CHECK(s.params_at(k).t_k == 0.1);
}

TEST_CASE("practical schedule: delta vanishes, t and N stay put") {
  const Schedule s = Schedule::practical_fixed_n(0.2, 1000, 0.1, 0.5);
  CHECK(s.samples() == 1000);
  double prev = 1e9;
  for (int k = 1; k <= 10000; k *= 10) {
    const auto p = s.params_at(k);
    CHECK(p.t_k == 0.2);
    CHECK(p.delta_k < prev);
    prev = p.delta_k;
    CHECK(p.delta_k == doctest::Approx(0.1 * std::pow(double(k), -2.5)).epsilon(1e-14));
  }
  CHECK(s.params_at(100000).delta_k > 0.0);
}

TEST_CASE("theoretical sample counts") {
  const Schedule s = Schedule::diminishing_t(1.0);

  // L = 0 collapses to the 8/alpha floor
  const auto n0 = s.theoretical_n_at(3, 4, 0.0);
  CHECK(n0.n_k == static_cast<long>(std::ceil(8.0 / s.params_at(3).alpha_k)));

  // k=4, p=1, L=1: t/delta = 4, J = e^8, alpha = 1/64
  const auto n4 = s.theoretical_n_at(4, 4, 1.0);
  const double expect = 8.0 * std::exp(8.0) * 64.0;
  CHECK(n4.n_k == static_cast<long>(std::ceil(expect)));
  CHECK(double(n4.n_k) == doctest::Approx(1.526e6).epsilon(1e-3));
  CHECK(std::isfinite(n4.summand));

  // growth law: log N_k = log 8 + 2 L^2 k^p + (p+2) log k
  for (int k = 2; k <= 40; ++k) {
    const auto nk = s.theoretical_n_at(k, 4, 1.0);
    const double ref = std::log(8.0) + 2.0 * std::pow(double(k), 1.0) + 3.0 * std::log(double(k));
    CHECK(nk.log_n_k == doctest::Approx(ref).epsilon(1e-12));
  }

  // overflow saturates
  const auto big = s.theoretical_n_at(50, 4, 10.0);
  CHECK(big.n_k == std::numeric_limits<long>::max());
  CHECK(std::isinf(big.summand));
  CHECK(std::isfinite(big.log_n_k));
}

TEST_CASE("summability report against the integral oracle") {
  // FixedT(p=1): delta_k = 1/k^3, so sqrt(delta_k) = k^{-1.5}
  const Schedule s = Schedule::fixed_t(0.1, 1.0, 1.0);
  const int horizon = 10000;
  const auto rep = s.summability_report(4, 0.5, horizon);
  CHECK(rep.sqrt_delta_summable);
  CHECK(rep.alpha_summable);
  REQUIRE(int(rep.sqrt_delta_partial.size()) == horizon);

  // oracle value of zeta(1.5) from a long partial sum plus the integral tail
  double zeta = 0.0;
  for (int k = 1; k <= 1000000; ++k) zeta += std::pow(double(k), -1.5);
  zeta += 2.0 / std::sqrt(1000000.5);

  const double tail = zeta - rep.sqrt_delta_partial.back();
  CHECK(tail <= 2.0 / std::sqrt(double(horizon)));          // integral upper bound
  CHECK(tail >= 2.0 / std::sqrt(double(horizon + 1)) - 1e-9);
  CHECK(rep.sqrt_delta_tail_bound == doctest::Approx(2.0 / std::sqrt(double(horizon))));

  // partial sums are monotone
  for (std::size_t i = 1; i < rep.alpha_partial.size(); i += 997) {
    CHECK(rep.alpha_partial[i] >= rep.alpha_partial[i - 1]);
    CHECK(rep.sqrt_delta_partial[i] >= rep.sqrt_delta_partial[i - 1]);
  }
}

TEST_CASE("harmonic sqrt-delta tail is flagged non-summable") {
  // DiminishingT(p=1): sqrt(delta_k) = 1/k, the harmonic series
  const Schedule s = Schedule::diminishing_t(1.0);
  const auto rep = s.summability_report(4, 0.0, 100);
  CHECK_FALSE(rep.sqrt_delta_summable);
  CHECK(std::isinf(rep.sqrt_delta_tail_bound));
  CHECK(rep.alpha_summable);

  // p-series criterion agreement for the built-in modes
  CHECK(Schedule::diminishing_t(1.5).summability_report(4, 0.0, 10).sqrt_delta_summable);
  CHECK(Schedule::fixed_t(0.1, 0.5, 0.1).summability_report(4, 0.0, 10).sqrt_delta_summable);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(Schedule::diminishing_t(0.0), ConfigError);
  CHECK_THROWS_AS(Schedule::fixed_t(0.0, 1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(Schedule::fixed_t(0.1, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Schedule::practical_fixed_n(0.1, 1, 0.1, 0.5), ConfigError);
}
