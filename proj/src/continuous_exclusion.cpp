#include "bbs/continuous_exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbs/random_models.hpp"
#include "bbs/stats.hpp"

namespace bbs {

PointState PointState::zeros(int k) {
  if (k < 1) throw std::invalid_argument("PointState: k must be positive");
  PointState s;
  s.points.assign(static_cast<std::size_t>(k), 0.0);
  return s;
}

void cx_step(PointState& state, double u) {
  if (u < 0.0 || u > 1.0) throw std::invalid_argument("cx_step: u must lie in [0,1]");
  auto& pts = state.points;
  if (u > pts.back()) {
    for (auto& x : pts) {
      if (x < u) {
        x = u;  // first entry below u is the largest such point
        return;
      }
    }
  }
  std::rotate(pts.begin(), pts.begin() + 1, pts.end());
  pts.back() = u;
}

std::int64_t cx_counter_over(PointState& state, const std::vector<double>& us) {
  std::int64_t counter = 0;
  for (double u : us) {
    counter += u > state.min_point();
    cx_step(state, u);
  }
  return counter;
}

CxRunResult run_cx(int k, std::int64_t n, std::uint64_t seed, const PointState* initial) {
  CxRunResult out;
  out.state = initial ? *initial : PointState::zeros(k);
  if (out.state.k() != k) throw std::invalid_argument("run_cx: initial state has wrong k");
  SplitRng rng(seed, 0);
  for (std::int64_t t = 0; t < n; ++t) {
    const double u = rng.next_unit();
    out.counter += u > out.state.min_point();
    cx_step(out.state, u);
  }
  return out;
}

double order_stat_cdf(int k, int j, double x) {
  if (j < 1 || j > k) throw std::invalid_argument("order_stat_cdf: j must lie in 1..k");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // j-th largest <= x  iff  at least k-j+1 of the k uniforms are <= x
  double cdf = 0.0;
  for (int m = k - j + 1; m <= k; ++m) {
    cdf += std::exp(log_binom(k, m) + m * std::log(x) + (k - m) * std::log1p(-x));
  }
  return std::min(cdf, 1.0);
}

double CxStationarityReport::max_ks() const {
  double d = 0.0;
  for (double v : ks_stats) d = std::max(d, v);
  return d;
}

CxStationarityReport cx_stationarity_test(int k, std::int64_t burn_in, std::int64_t samples,
                                          std::uint64_t seed) {
  CxStationarityReport rep;
  rep.k = k;
  rep.burn_in = burn_in;
  rep.samples = samples;
  rep.stride = 10 * k;
  PointState state = PointState::zeros(k);
  SplitRng rng(seed, 0);
  for (std::int64_t t = 0; t < burn_in; ++t) cx_step(state, rng.next_unit());
  std::vector<std::vector<double>> marginals(static_cast<std::size_t>(k));
  for (auto& m : marginals) m.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t s = 0; s < samples; ++s) {
    for (std::int64_t t = 0; t < rep.stride; ++t) cx_step(state, rng.next_unit());
    for (int j = 0; j < k; ++j)
      marginals[static_cast<std::size_t>(j)].push_back(state.points[static_cast<std::size_t>(j)]);
  }
  for (int j = 1; j <= k; ++j) {
    rep.ks_stats.push_back(ks_statistic(
        marginals[static_cast<std::size_t>(j - 1)],
        [k, j](double x) { return order_stat_cdf(k, j, x); }));
  }
  return rep;
}

std::vector<double> cx_meeting_curve(int k, std::int64_t t_max, std::int64_t pairs,
                                     std::uint64_t seed) {
  std::vector<std::int64_t> not_met(static_cast<std::size_t>(t_max) + 1, 0);
  for (std::int64_t p = 0; p < pairs; ++p) {
    SplitRng rng(seed, static_cast<std::uint64_t>(p));
    PointState a = PointState::zeros(k);
    PointState b;
    b.points.assign(static_cast<std::size_t>(k), 1.0);
    bool met = false;
    ++not_met[0];
    for (std::int64_t t = 1; t <= t_max; ++t) {
      if (!met) {
        const double u = rng.next_unit();
        cx_step(a, u);
        cx_step(b, u);
        met = a == b;  // shared inputs keep coalesced chains together
      }
      not_met[static_cast<std::size_t>(t)] += !met;
    }
  }
  std::vector<double> curve(not_met.size());
  for (std::size_t t = 0; t < not_met.size(); ++t)
    curve[t] = static_cast<double>(not_met[t]) / static_cast<double>(pairs);
  return curve;
}

}  // namespace bbs
