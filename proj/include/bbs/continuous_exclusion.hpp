#pragma once

#include <cstdint>
#include <vector>

namespace bbs {

/// k points on [0,1], kept sorted non-increasing.
struct PointState {
  std::vector<double> points;

  static PointState zeros(int k);
  int k() const { return static_cast<int>(points.size()); }
  double min_point() const { return points.back(); }
  bool operator==(const PointState&) const = default;
};

/// Circular exclusion transition: if u exceeds the smallest point, the
/// largest point below u is replaced by u; otherwise the largest point
/// drops off and u enters at the bottom.
void cx_step(PointState& state, double u);

struct CxRunResult {
  std::int64_t counter = 0;  // steps with u above the pre-step minimum
  PointState state;
};

/// Drive the k-point process by n i.i.d. uniforms from the all-zeros state
/// (or an explicit initial state).
CxRunResult run_cx(int k, std::int64_t n, std::uint64_t seed,
                   const PointState* initial = nullptr);

/// Feed explicit uniforms; returns the counter increment.
std::int64_t cx_counter_over(PointState& state, const std::vector<double>& us);

/// CDF of the j-th largest of k i.i.d. uniforms (j = 1 is the maximum).
double order_stat_cdf(int k, int j, double x);

struct CxStationarityReport {
  int k = 0;
  std::int64_t burn_in = 0;
  std::int64_t samples = 0;
  std::int64_t stride = 0;
  std::vector<double> ks_stats;  // per marginal j = 1..k
  double max_ks() const;
};

/// Subsample the chain every 10k steps after burn-in and compare each
/// marginal against its order-statistic law.
CxStationarityReport cx_stationarity_test(int k, std::int64_t burn_in, std::int64_t samples,
                                          std::uint64_t seed);

/// Empirical P(two chains from all-zeros / all-ones initial states, driven
/// by shared uniforms, have not met by time t), for t = 0..t_max.
std::vector<double> cx_meeting_curve(int k, std::int64_t t_max, std::int64_t pairs,
                                     std::uint64_t seed);

}  // namespace bbs
