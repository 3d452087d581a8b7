#include <map>
#include <sstream>
#include <stdexcept>

#include "bbs/carrier.hpp"
#include "doctest.h"
#include "worked_example.hpp"

using namespace bbs;
using bbs::testing::random_config;
using bbs::testing::worked_config;

TEST_CASE("unbounded carrier step follows the circular exclusion rule") {
  Carrier c = Carrier::unbounded(3);
  CHECK(c.step(2) == 0);  // empty carrier picks the ball up
  CHECK(c.mult(2) == 1);
  CHECK(c.held() == 1);

  Carrier d = Carrier::unbounded(3);
  CHECK(d.step(0) == 0);  // empty carrier, empty input
  CHECK(d.held() == 0);

  Carrier e = Carrier::unbounded(3);
  e.insert_ball(3);
  e.insert_ball(1);
  CHECK(e.step(2) == 1);  // the held 1 is the largest entry below 2
  CHECK(e.mult(2) == 1);
  CHECK(e.mult(3) == 1);
  CHECK(e.mult(1) == 0);
  CHECK(e.step(0) == 3);  // an empty input expels the maximum
  CHECK_THROWS_AS(e.step(4), std::invalid_argument);
  CHECK_THROWS_AS(e.step(-1), std::invalid_argument);
}

TEST_CASE("bounded carrier step") {
  Carrier c = Carrier::bounded(5, 3);
  c.insert_ball(2);  // word [2,0,0]
  CHECK(c.min_entry() == 0);
  CHECK(c.step(0) == 2);  // smallest entry 0 >= input, so the max slides out
  CHECK(c.held() == 0);

  Carrier f = Carrier::bounded(1, 1);
  f.insert_ball(1);
  CHECK(f.step(1) == 1);  // full of 1s, input 1: fixed point
  CHECK(f.mult(1) == 1);

  Carrier g = Carrier::bounded(5, 2);
  CHECK(g.step(3) == 0);
  CHECK(g.step(5) == 3);  // replaces the largest entry below 5
  CHECK(g.step(4) == 0);  // 4 > min (a zero slot remains after the swap)
  CHECK(g.word(2) == std::vector<Color>{5, 4});
  CHECK(g.step(1) == 5);  // carrier full of colors > 1: max slides out
  CHECK(g.word(2) == std::vector<Color>{4, 1});
}

TEST_CASE("run_carrier induces the time evolution") {
  const BallConfig x0 = worked_config();
  CarrierTrace trace = run_carrier(x0);
  CHECK(BallConfig(5, trace.expelled) == evolve_step(x0));
  CHECK(trace.height_at(0) == 0);
  CHECK(trace.height_at(trace.steps()) == 0);

  SplitRng rng(31, 0);
  for (int t = 0; t < 1000; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(5)),
                                 1 + static_cast<std::int64_t>(rng.next_below(40)), 0.4);
    CHECK(BallConfig(x.kappa(), run_carrier(x).expelled) == evolve_step(x));
    // capacity at least the ball count induces the same map
    const std::int64_t cap = std::max<std::int64_t>(x.ball_count(), 1) +
                             static_cast<std::int64_t>(rng.next_below(3));
    CHECK(BallConfig(x.kappa(), run_carrier(x, cap).expelled) == evolve_step(x));
  }
}

TEST_CASE("large-capacity carriers reproduce the unbounded multiplicities") {
  SplitRng rng(71, 0);
  for (int t = 0; t < 50; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(5)),
                                 1 + static_cast<std::int64_t>(rng.next_below(30)), 0.4);
    Carrier finite = Carrier::bounded(x.kappa(), std::max<std::int64_t>(x.ball_count(), 1));
    Carrier infinite = Carrier::unbounded(x.kappa());
    for (std::int64_t s = 1; s <= x.support_end(); ++s) {
      finite.step(x.at(s));
      infinite.step(x.at(s));
      for (Color c = 1; c <= x.kappa(); ++c) REQUIRE(finite.mult(c) == infinite.mult(c));
    }
  }
}

TEST_CASE("run_carrier on the empty configuration") {
  CarrierTrace trace = run_carrier(BallConfig(3, {}));
  CHECK(trace.steps() == 0);
  CHECK(trace.heights() == std::vector<std::int64_t>{0});
}

TEST_CASE("ball-count bookkeeping along a sweep") {
  SplitRng rng(37, 0);
  BallConfig x = random_config(rng, 4, 30, 0.35);
  Carrier car = Carrier::unbounded(4);
  std::map<Color, std::int64_t> expelled;
  const std::int64_t steps = x.support_end() + 50;
  for (std::int64_t t = 1; t <= steps; ++t) {
    const Color out = car.step(x.at(t));
    if (out > 0) ++expelled[out];
    for (Color c = 1; c <= 4; ++c) {
      std::int64_t unread = 0;
      for (std::int64_t s = t + 1; s <= x.support_end(); ++s) unread += x.at(s) == c;
      std::int64_t total = car.mult(c) + expelled[c] + unread;
      CHECK(total == x.color_counts()[static_cast<std::size_t>(c)]);
    }
  }
}

TEST_CASE("energies of the worked example") {
  const BallConfig x0 = worked_config();
  CHECK(energy(x0, 0) == 0);
  CHECK(energy(x0, 1) == 8);
  CHECK(energy(x0, 2) == 13);
  CHECK(energy(BallConfig(2, {}), 3) == 0);
}

TEST_CASE("young diagram of the worked example") {
  Partition dia = young_diagram(worked_config());
  CHECK(dia.rows() == std::vector<std::int64_t>{8, 5, 2, 1});
  CHECK(dia.conjugate() == std::vector<std::int64_t>{4, 3, 2, 2, 2, 1, 1, 1});
  CHECK(young_diagram(BallConfig(3, {})).rows().empty());
}

TEST_CASE("decomposed block lengths equal the conjugate diagram") {
  BallConfig cur = worked_config();
  for (int t = 0; t < 6; ++t) cur = evolve_step(cur);
  REQUIRE(soliton_decomposition_reached(cur));
  std::vector<std::int64_t> lengths;
  std::int64_t len = 0;
  Color prev = 0;
  for (std::int64_t s = 1; s <= cur.support_end() + 1; ++s) {
    const Color v = cur.at(s);
    if (v > 0 && (len == 0 || v <= prev)) ++len;
    else {
      if (len > 0) lengths.push_back(len);
      len = v > 0 ? 1 : 0;
    }
    prev = v;
  }
  std::sort(lengths.rbegin(), lengths.rend());
  CHECK(lengths == young_diagram(worked_config()).conjugate());
}

TEST_CASE("energy is invariant under the cyclic rule") {
  SplitRng rng(41, 0);
  for (int t = 0; t < 40; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(5)),
                                 1 + static_cast<std::int64_t>(rng.next_below(35)), 0.4);
    BallConfig y = cyclic_step(x);
    for (std::int64_t j = 1; j <= 5; ++j) CHECK(energy(x, j) == energy(y, j));
  }
}

TEST_CASE("monotone energy indicator in the capacity") {
  SplitRng rng(43, 0);
  for (int t = 0; t < 25; ++t) {
    BallConfig x = random_config(rng, 3, 25, 0.4);
    for (std::int64_t c = 1; c <= 6; ++c) CHECK(energy(x, c) >= energy(x, c - 1));
    for (std::int64_t c = 2; c <= 6; ++c)
      CHECK(row_length(x, c) <= row_length(x, c - 1));
    // stepwise: the capacity-c indicator dominates the capacity-(c-1) one
    for (std::int64_t c = 2; c <= 4; ++c) {
      Carrier small = Carrier::bounded(3, c - 1);
      Carrier big = Carrier::bounded(3, c);
      for (std::int64_t s = 1; s <= x.support_end(); ++s) {
        const Color y = x.at(s);
        CHECK((y > big.min_entry()) >= (y > small.min_entry()));
        small.step(y);
        big.step(y);
      }
    }
  }
}

TEST_CASE("lambda1 queue formula matches the diagram and the word sweep") {
  CHECK(lambda1_queue(worked_config()) == 4);
  CHECK(lambda1_queue(BallConfig(3, {2})) == 1);
  SplitRng rng(47, 0);
  for (int t = 0; t < 100; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(5)),
                                 1 + static_cast<std::int64_t>(rng.next_below(40)), 0.45);
    auto cols = young_diagram(x).conjugate();
    CHECK(lambda1_queue(x) == (cols.empty() ? 0 : cols.front()));
  }
}

TEST_CASE("column_length agrees with the conjugate diagram") {
  SplitRng rng(53, 0);
  for (int t = 0; t < 60; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(4)),
                                 1 + static_cast<std::int64_t>(rng.next_below(35)), 0.4);
    auto cols = young_diagram(x).conjugate();
    for (std::int64_t j = 1; j <= 6; ++j) {
      const std::int64_t expect =
          j <= static_cast<std::int64_t>(cols.size()) ? cols[static_cast<std::size_t>(j - 1)] : 0;
      CHECK(column_length(x, j) == expect);
    }
  }
}

TEST_CASE("capacity coupling") {
  const BallConfig x0 = worked_config();
  for (std::int64_t c = 1; c <= 5; ++c) CHECK(check_capacity_coupling(x0, c));
  SplitRng rng(59, 0);
  for (int t = 0; t < 60; ++t) {
    BallConfig x = random_config(rng, 1 + static_cast<int>(rng.next_below(5)),
                                 1 + static_cast<std::int64_t>(rng.next_below(40)), 0.4);
    const std::int64_t c = 1 + static_cast<std::int64_t>(rng.next_below(6));
    CHECK(check_capacity_coupling(x, c));
  }
}

TEST_CASE("carrier_height_path matches the trace for both alphabet sizes") {
  SplitRng rng(67, 0);
  for (int t = 0; t < 20; ++t) {
    std::vector<Color> cells(40);
    for (auto& c : cells) c = static_cast<Color>(rng.next_below(30));
    BallConfig small(60, cells), large(300, cells);
    for (std::int64_t cap : {kUnboundedCapacity, std::int64_t{1}, std::int64_t{3}}) {
      const auto expected = run_carrier(small, cap).heights();
      CHECK(carrier_height_path(small, cap) == expected);
      CHECK(carrier_height_path(large, cap) == expected);
    }
  }
}

TEST_CASE("large-alphabet energy sweep matches the multiplicity sweep") {
  // force both code paths over the same cells by varying only kappa
  SplitRng rng(61, 0);
  std::vector<Color> cells(60);
  for (auto& c : cells) c = static_cast<Color>(rng.next_below(50));
  BallConfig small(63, cells), large(200, cells);
  for (std::int64_t k = 1; k <= 8; ++k) CHECK(energy(small, k) == energy(large, k));
  CHECK(lambda1_queue(small) == lambda1_queue(large));
}

TEST_CASE("trace serialization is line oriented") {
  CarrierTrace trace = run_carrier(BallConfig(2, {2, 1}));
  std::istringstream is(trace_to_lines(trace));
  std::string line;
  std::int64_t rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::int64_t t, m1, m2, out;
    REQUIRE((ls >> t >> m1 >> m2 >> out));
    ++rows;
    CHECK(t == rows);
    CHECK(m1 == trace.mult_at(t, 1));
    CHECK(m2 == trace.mult_at(t, 2));
    CHECK(out == trace.expelled[static_cast<std::size_t>(t - 1)]);
  }
  CHECK(rows == trace.steps());
}
