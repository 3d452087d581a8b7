#include <cmath>
#include <stdexcept>

#include "bbs/carrier.hpp"
#include "bbs/continuous_exclusion.hpp"
#include "bbs/random_models.hpp"
#include "bbs/stats.hpp"
#include "doctest.h"

using namespace bbs;

TEST_CASE("cx_step") {
  PointState s{{0.9, 0.4, 0.1}};
  cx_step(s, 0.5);
  CHECK(s.points == std::vector<double>{0.9, 0.5, 0.1});
  cx_step(s, 0.05);  // at or below the minimum: slide and append
  CHECK(s.points == std::vector<double>{0.5, 0.1, 0.05});

  PointState one{{0.7}};
  cx_step(one, 0.3);
  CHECK(one.points == std::vector<double>{0.3});
  cx_step(one, 0.9);
  CHECK(one.points == std::vector<double>{0.9});

  CHECK_THROWS_AS(cx_step(s, 1.5), std::invalid_argument);
}

TEST_CASE("cx_step keeps the state sorted, of fixed size") {
  SplitRng rng(11, 0);
  PointState s = PointState::zeros(5);
  for (int t = 0; t < 2000; ++t) {
    cx_step(s, rng.next_unit());
    REQUIRE(s.k() == 5);
    for (int i = 1; i < 5; ++i)
      REQUIRE(s.points[static_cast<std::size_t>(i - 1)] >= s.points[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("run_cx is reproducible and counts at rate k/(k+1)") {
  const CxRunResult a = run_cx(3, 5000, 71);
  const CxRunResult b = run_cx(3, 5000, 71);
  CHECK(a.counter == b.counter);
  CHECK(a.state == b.state);
  for (int k = 1; k <= 4; ++k) {
    const std::int64_t n = 200000;
    const CxRunResult r = run_cx(k, n, 101 + static_cast<std::uint64_t>(k));
    const double rate = static_cast<double>(r.counter) / static_cast<double>(n);
    const double target = static_cast<double>(k) / static_cast<double>(k + 1);
    CHECK(std::abs(rate - target) < 4.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("order statistic CDF") {
  // largest of 3: x^3; smallest of 3: 1-(1-x)^3
  CHECK(order_stat_cdf(3, 1, 0.5) == doctest::Approx(0.125));
  CHECK(order_stat_cdf(3, 3, 0.5) == doctest::Approx(1.0 - 0.125));
  CHECK(order_stat_cdf(1, 1, 0.25) == doctest::Approx(0.25));
  CHECK(order_stat_cdf(4, 2, 0.0) == 0.0);
  CHECK(order_stat_cdf(4, 2, 1.0) == 1.0);
  CHECK_THROWS_AS(order_stat_cdf(3, 0, 0.5), std::invalid_argument);
}

TEST_CASE("stationarity: marginals match order-statistic laws") {
  for (int k = 1; k <= 3; ++k) {
    const CxStationarityReport rep =
        cx_stationarity_test(k, 500, 20000, 500 + static_cast<std::uint64_t>(k));
    CHECK(rep.max_ks() < 0.02);
  }
}

TEST_CASE("coalesced chains stay together under shared inputs") {
  SplitRng rng(77, 0);
  for (int k = 2; k <= 4; ++k) {
    PointState a = PointState::zeros(k);
    PointState b;
    b.points.assign(static_cast<std::size_t>(k), 1.0);
    bool met = false;
    for (int t = 0; t < 500; ++t) {
      const double u = rng.next_unit();
      cx_step(a, u);
      cx_step(b, u);
      if (met) REQUIRE(a == b);
      met = met || a == b;
    }
    CHECK(met);
  }
}

TEST_CASE("single-point stationarity at the stated scale") {
  // k = 1 holds exactly the last input, so its marginal is exactly uniform
  const CxStationarityReport rep = cx_stationarity_test(1, 100, 100'000, 808);
  CHECK(rep.max_ks() < 0.01);
}

TEST_CASE("coupled chains coalesce within the factorial bound") {
  for (int k = 2; k <= 4; ++k) {
    const std::int64_t pairs = 2000;
    const auto curve = cx_meeting_curve(k, 40, pairs, 600 + static_cast<std::uint64_t>(k));
    // permanence: the not-met fraction never increases
    for (std::size_t t = 1; t < curve.size(); ++t) REQUIRE(curve[t] <= curve[t - 1]);
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    for (std::size_t t = 0; t < curve.size(); ++t) {
      const double bound =
          std::pow(1.0 - 1.0 / fact, std::floor(static_cast<double>(t) / k));
      const double se = std::sqrt(std::max(bound * (1 - bound), 1e-6) / pairs);
      CHECK(curve[t] <= bound + 3.0 * se);
    }
  }
}

TEST_CASE("exact equality with the finite-capacity carrier on shared uniforms") {
  for (int k = 1; k <= 4; ++k) {
    for (std::uint64_t stream = 0; stream < 2; ++stream) {
      const std::int64_t n = 800;
      const auto us = gen_uniforms(n, 1234, stream);
      const BallConfig x = gen_permutation(n, 1234, stream);
      PointState st = PointState::zeros(k);
      CHECK(cx_counter_over(st, us) == energy(x, k));
    }
  }
}
