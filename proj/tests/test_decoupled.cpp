#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <functional>
#include <map>

#include "bbs/decoupled.hpp"
#include "bbs/stats.hpp"
#include "doctest.h"
#include "worked_example.hpp"

using namespace bbs;

TEST_CASE("unstable_colors") {
  const UnstableSet u = unstable_colors(ColorDist({.1, .1, .25, .05, .15, .2, .1, .05}));
  CHECK(u.alphas == std::vector<Color>{0, 2, 5, 6});
  CHECK(u.r() == 3);
  CHECK(u.contains(5));
  CHECK_FALSE(u.contains(3));

  CHECK(unstable_colors(ColorDist({0.5, 0.3, 0.2})).alphas == std::vector<Color>{0});
  CHECK(unstable_colors(ColorDist({0.3, 0.7})).alphas == std::vector<Color>{0, 1});
}

TEST_CASE("ell_plus") {
  const UnstableSet u = unstable_colors(ColorDist({.1, .1, .25, .05, .15, .2, .1, .05}));
  CHECK(ell_plus(3, u) == 5);
  CHECK(ell_plus(1, u) == 2);
  CHECK(ell_plus(6, u) == 8);  // alpha_r and above map to kappa+1
  CHECK(ell_plus(7, u) == 8);
  const UnstableSet v = unstable_colors(ColorDist({0.3, 0.7}));
  CHECK(ell_plus(1, v) == 2);
  CHECK_THROWS_AS(ell_plus(0, v), std::invalid_argument);
}

TEST_CASE("decoupled_step localized exclusion") {
  const UnstableSet u = unstable_colors(ColorDist({.1, .1, .25, .05, .15, .2, .1, .05}));
  SUBCASE("replacement inside the interval") {
    Carrier c = Carrier::unbounded(7);
    c.insert_ball(3);
    CHECK(decoupled_step(c, 5, u) == 3);
    CHECK(c.mult(5) == 1);
    CHECK(c.mult(3) == 0);
  }
  SUBCASE("no replacement across intervals") {
    Carrier c = Carrier::unbounded(7);
    c.insert_ball(1);
    CHECK(decoupled_step(c, 5, u) == 0);
    CHECK(c.mult(5) == 1);
    CHECK(c.mult(1) == 1);
  }
  SUBCASE("empty carrier always absorbs") {
    Carrier c = Carrier::unbounded(7);
    CHECK(decoupled_step(c, 4, u) == 0);
    CHECK(c.mult(4) == 1);
  }
  SUBCASE("input 0 acts as kappa+1") {
    Carrier c = Carrier::unbounded(7);
    c.insert_ball(7);
    c.insert_ball(1);
    CHECK(decoupled_step(c, 0, u) == 7);  // removes the top interval's maximum
    CHECK(decoupled_step(c, 0, u) == 0);  // the held 1 is below alpha_r, untouched
    CHECK(c.mult(1) == 1);
  }
}

TEST_CASE("run_decoupled matches the plain carrier in the subcritical phase") {
  const ColorDist p({0.5, 0.3, 0.2});
  const UnstableSet u = unstable_colors(p);
  SplitRng rng(5, 0);
  const auto xs = gen_iid_stream(20000, p, rng);
  Carrier plain = Carrier::unbounded(2);
  Carrier local = Carrier::unbounded(2);
  for (Color y : xs) {
    plain.step(y);
    decoupled_step(local, y, u);
    REQUIRE(plain.mult(1) == local.mult(1));
    REQUIRE(plain.mult(2) == local.mult(2));
  }
}

TEST_CASE("run_decoupled over a configuration") {
  SUBCASE("subcritical: identical to the plain sweep over the support") {
    const ColorDist p({0.5, 0.3, 0.2});
    const UnstableSet u = unstable_colors(p);
    const BallConfig x = gen_iid(500, p, 21, 0);
    const CarrierTrace loc = run_decoupled(x, u);
    const CarrierTrace plain = run_carrier(x);
    REQUIRE(loc.steps() == x.support_end());
    for (std::int64_t t = 0; t <= loc.steps(); ++t) {
      for (Color c = 1; c <= 2; ++c) REQUIRE(loc.mult_at(t, c) == plain.mult_at(t, c));
    }
  }
  SUBCASE("coordinatewise dominance of the plain sweep") {
    const ColorDist p({.1, .1, .25, .05, .15, .2, .1, .05});
    const UnstableSet u = unstable_colors(p);
    const BallConfig x = gen_iid(800, p, 23, 0);
    const CarrierTrace loc = run_decoupled(x, u);
    const CarrierTrace plain = run_carrier(x);
    for (std::int64_t t = 0; t <= std::min(loc.steps(), plain.steps()); ++t) {
      for (Color c = 1; c <= 7; ++c) REQUIRE(plain.mult_at(t, c) <= loc.mult_at(t, c));
    }
  }
}

TEST_CASE("decoupled carrier dominates and agrees above alpha_r") {
  const ColorDist p({.1, .1, .25, .05, .15, .2, .1, .05});
  const UnstableSet u = unstable_colors(p);
  SplitRng rng(17, 0);
  const auto xs = gen_iid_stream(50000, p, rng);
  Carrier plain = Carrier::unbounded(7);
  Carrier local = Carrier::unbounded(7);
  for (Color y : xs) {
    plain.step(y);
    decoupled_step(local, y, u);
    for (Color c = 1; c <= 7; ++c) {
      REQUIRE(plain.mult(c) <= local.mult(c));
      if (c >= u.alpha_r()) REQUIRE(plain.mult(c) == local.mult(c));
    }
  }
}

TEST_CASE("g_functional") {
  const ColorDist p({.1, .1, .25, .05, .15, .2, .1, .05});
  const UnstableSet u = unstable_colors(p);
  // ell = 2: ell_plus = 5, stable colors 3, 4
  CHECK(g_functional({0, 0}, 2, 2, u) == 1);
  CHECK(g_functional({1, 1}, 3, 2, u) == -1);  // q = ell+1 needs no vacancy
  CHECK(g_functional({0, 0}, 5, 2, u) == -1);
  CHECK(g_functional({1, 0}, 5, 2, u) == 0);
  CHECK(g_functional({0, 1}, 5, 2, u) == 0);
  CHECK(g_functional({0, 0}, 6, 2, u) == 0);  // beyond ell_plus
  CHECK(g_functional({0, 0}, 0, 2, u) == 0);  // 0 reads as 8 > ell_plus
  // ell = 7: ell_plus = 8, no stable colors in between; 0 reads as 8
  CHECK(g_functional({}, 0, 7, u) == -1);
  CHECK(g_functional({}, 7, 7, u) == 1);
  CHECK_THROWS_AS(g_functional({0}, 2, 2, u), std::invalid_argument);
}

TEST_CASE("additive path reconstruction identity") {
  const ColorDist p({.1, .1, .25, .05, .15, .2, .1, .05});
  const UnstableSet u = unstable_colors(p);
  SplitRng rng(19, 0);
  const auto xs = gen_iid_stream(100000, p, rng);
  for (Color ell = 1; ell <= 7; ++ell) {
    const AdditivePath path = additive_path(xs, p, ell);
    REQUIRE(path.horizon() == static_cast<std::int64_t>(xs.size()));
    Carrier local = Carrier::unbounded(7);
    std::int64_t running_min = 0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      decoupled_step(local, xs[t], u);
      const std::int64_t s = path.at(static_cast<std::int64_t>(t) + 1);
      const std::int64_t ds = s - path.at(static_cast<std::int64_t>(t));
      REQUIRE(ds >= -1);
      REQUIRE(ds <= 1);
      running_min = std::min(running_min, s);
      REQUIRE(local.mult(ell) == s - running_min);
    }
  }
}

TEST_CASE("additive path on an all-empty stream never lifts the count") {
  const ColorDist p({0.5, 0.3, 0.2});
  const std::vector<Color> zeros(50, 0);
  const AdditivePath path = additive_path(zeros, p, 1);
  std::int64_t running_min = 0;
  for (std::int64_t t = 0; t <= path.horizon(); ++t) {
    running_min = std::min(running_min, path.at(t));
    CHECK(path.at(t) - running_min == 0);
  }
}

TEST_CASE("stationary_pi_subcritical") {
  const ColorDist p({2.0 / 3, 1.0 / 3});
  const ProductGeometric pi = stationary_pi_subcritical(p);
  CHECK(pi.pmf({0}) == doctest::Approx(0.5));
  CHECK(pi.pmf({3}) == doctest::Approx(0.0625));
  CHECK(pi.origin_mass() == doctest::Approx(0.5));
  CHECK_THROWS_AS(stationary_pi_subcritical(ColorDist({0.3, 0.7})), std::domain_error);
  CHECK_THROWS_AS(stationary_pi_subcritical(ColorDist({1.0 / 3, 1.0 / 3, 1.0 / 3})),
                  std::domain_error);
}

TEST_CASE("stationary pmf sums to one over a truncation box") {
  const ColorDist p({0.5, 0.25, 0.15, 0.1});
  const ProductGeometric pi = stationary_pi_subcritical(p);
  const auto box = pi.truncation_box(1e-9);
  double total = 0.0;
  std::vector<std::int64_t> counts(3, 0);
  std::function<void(std::size_t)> sum_over = [&](std::size_t i) {
    if (i == counts.size()) {
      total += pi.pmf(counts);
      return;
    }
    for (counts[i] = 0; counts[i] <= box[i]; ++counts[i]) sum_over(i + 1);
    counts[i] = 0;
  };
  sum_over(0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("stationary_pi_decoupled") {
  SUBCASE("subcritical density reduces to the plain law") {
    const ColorDist p({0.5, 0.3, 0.2});
    const ProductGeometric a = stationary_pi_decoupled(p);
    const ProductGeometric b = stationary_pi_subcritical(p);
    CHECK(a.colors() == b.colors());
    REQUIRE(a.ratios().size() == b.ratios().size());
    for (std::size_t i = 0; i < a.ratios().size(); ++i)
      CHECK(a.ratios()[i] == doctest::Approx(b.ratios()[i]));
  }
  SUBCASE("every color unstable leaves a point mass") {
    const ColorDist p({1.0 / 3, 1.0 / 3, 1.0 / 3});
    const ProductGeometric pi = stationary_pi_decoupled(p);
    CHECK(pi.colors().empty());
    CHECK(pi.pmf({}) == doctest::Approx(1.0));
  }
  SUBCASE("ratios follow the interval tops") {
    const ColorDist p({.1, .1, .25, .05, .15, .2, .1, .05});
    const ProductGeometric pi = stationary_pi_decoupled(p);
    CHECK(pi.colors() == std::vector<Color>{1, 3, 4, 7});
    CHECK(pi.ratios()[0] == doctest::Approx(.1 / .25));   // color 1 under alpha = 2
    CHECK(pi.ratios()[1] == doctest::Approx(.05 / .2));   // color 3 under alpha = 5
    CHECK(pi.ratios()[2] == doctest::Approx(.15 / .2));   // color 4 under alpha = 5
    CHECK(pi.ratios()[3] == doctest::Approx(.05 / .1));   // color 7 under p_0
  }
}

TEST_CASE("decoupled occupation measure matches the product law") {
  const auto measure_tv = [](const ColorDist& p, std::int64_t steps, std::uint64_t seed) {
    const UnstableSet u = unstable_colors(p);
    const ProductGeometric pi = stationary_pi_decoupled(p);
    const auto box = pi.truncation_box(1e-6);
    const auto cdf = p.cdf();
    SplitRng rng(seed, 0);
    Carrier car = Carrier::unbounded(p.kappa());
    const std::int64_t warm = steps / 10;
    std::map<std::vector<std::int64_t>, std::int64_t> occupation;
    for (std::int64_t t = 1; t <= steps + warm; ++t) {
      decoupled_step(car, sample_color(cdf, rng.next_unit()), u);
      if (t > warm) {
        std::vector<std::int64_t> key;
        for (Color c : pi.colors()) key.push_back(car.mult(c));
        ++occupation[key];
      }
    }
    double tv = 0.0, mass_in = 0.0, emp_in = 0.0;
    std::vector<std::int64_t> counts(pi.colors().size(), 0);
    std::function<void(std::size_t)> walk_box = [&](std::size_t i) {
      if (i == counts.size()) {
        const double mass = pi.pmf(counts);
        const auto it = occupation.find(counts);
        const double emp =
            it == occupation.end() ? 0.0 : static_cast<double>(it->second) / steps;
        tv += std::abs(emp - mass);
        mass_in += mass;
        emp_in += emp;
        return;
      }
      for (counts[i] = 0; counts[i] <= box[i]; ++counts[i]) walk_box(i + 1);
      counts[i] = 0;
    };
    walk_box(0);
    return 0.5 * (tv + std::abs((1.0 - emp_in) - (1.0 - mass_in)));
  };
  // single stable color at the nominal scale
  CHECK(measure_tv(ColorDist({0.4, 0.4, 0.2}), 1'000'000, 51) < 0.02);
  // four stable colors need a longer run to clear the same tolerance
  CHECK(measure_tv(ColorDist({.1, .1, .25, .05, .15, .2, .1, .05}), 4'000'000, 52) < 0.02);
}

TEST_CASE("one-step invariance of the subcritical stationary law") {
  // exact samples, one transition, chi-square against the exact pmf
  const ColorDist p({0.5, 0.3, 0.2});
  const ProductGeometric pi = stationary_pi_subcritical(p);
  const auto cdf = p.cdf();
  SplitRng rng(301, 0);
  const int samples = 100000;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> hits;
  for (int s = 0; s < samples; ++s) {
    const auto counts = pi.sample(rng);
    Carrier car = Carrier::unbounded(2);
    for (std::int64_t i = 0; i < counts[0]; ++i) car.insert_ball(1);
    for (std::int64_t i = 0; i < counts[1]; ++i) car.insert_ball(2);
    car.step(sample_color(cdf, rng.next_unit()));
    ++hits[{car.mult(1), car.mult(2)}];
  }
  // bins with expected mass >= 1e-3, remainder lumped
  double chi2 = 0.0;
  double lumped_expected = static_cast<double>(samples);
  std::int64_t lumped_observed = samples;
  int bins = 0;
  for (std::int64_t a = 0; a <= 12; ++a) {
    for (std::int64_t b = 0; b <= 12; ++b) {
      const double mass = pi.pmf({a, b});
      if (mass < 1e-3) continue;
      const double expected = mass * samples;
      const auto it = hits.find({a, b});
      const double observed = it == hits.end() ? 0.0 : static_cast<double>(it->second);
      chi2 += (observed - expected) * (observed - expected) / expected;
      lumped_expected -= expected;
      lumped_observed -= static_cast<std::int64_t>(observed);
      ++bins;
    }
  }
  chi2 += (lumped_observed - lumped_expected) * (lumped_observed - lumped_expected) /
          lumped_expected;
  CHECK(chi_square_p_value(chi2, static_cast<double>(bins)) > 0.01);
}

TEST_CASE("estimate_gamma") {
  SUBCASE("fair single color gives unit variance") {
    const GammaEstimate est = estimate_gamma(ColorDist({0.5, 0.5}), 1, 1'500'000, 0, 99);
    CHECK(est.gamma2 == doctest::Approx(1.0).epsilon(0.10));
    CHECK(est.gamma2 > 0.0);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.mean_increment) < 0.01);
  }
  SUBCASE("stable under doubling the run length") {
    const ColorDist p({0.4, 0.4, 0.2});
    const GammaEstimate a = estimate_gamma(p, 1, 400'000, 0, 7);
    const GammaEstimate b = estimate_gamma(p, 1, 800'000, 0, 7);
    CHECK(a.gamma2 > 0.0);
    CHECK(b.gamma2 > 0.0);
    CHECK(std::abs(a.gamma2 - b.gamma2) / b.gamma2 < 0.15);
  }
}
