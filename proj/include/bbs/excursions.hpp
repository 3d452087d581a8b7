#pragma once

#include <cstdint>
#include <vector>

#include "bbs/carrier.hpp"
#include "bbs/random_models.hpp"

namespace bbs {

/// Excursion decomposition of a carrier height path over [0, n]: return
/// times are the visits of the held-ball count to 0 in [1, n], heights are
/// the per-excursion maxima, the meander is the maximum after the last
/// return.
struct ExcursionSummary {
  std::int64_t completed = 0;  // M_n
  std::vector<std::int64_t> heights;
  std::int64_t meander = 0;
  std::vector<std::int64_t> return_times;

  /// Order statistics h_(1) >= h_(2) >= ...
  std::vector<std::int64_t> sorted_heights() const;
};

/// Decompose a height path (index t = 0..; entries past the end count as 0,
/// which is exact for a drained finite sweep).
ExcursionSummary decompose_heights(const std::vector<std::int64_t>& height_path, std::int64_t n);

ExcursionSummary decompose(const CarrierTrace& trace, std::int64_t n);

/// Verify the excursion/soliton length bounds for a configuration supported
/// in [1, n]: max completed height <= lambda_1 <= max(completed, meander),
/// and lambda_j >= j-th largest height for every j <= M_n.
bool check_soliton_bounds(const BallConfig& config, std::int64_t n);

/// i.i.d. excursion heights of the carrier over an i.i.d.-p color stream.
/// Requires a recurrent (subcritical) density; throws after too many steps
/// without returning to the empty carrier.
std::vector<std::int64_t> sample_excursion_heights(const ColorDist& p, std::int64_t count,
                                                   SplitRng& rng);

/// Exact single-color excursion height survival P(h_1 > x)
/// (gambler's ruin with theta = p_0 / p_1; requires kappa = 1, p_0 > p_1).
double kappa1_height_survival(const ColorDist& p, std::int64_t x);

struct ExcursionTailFit {
  std::int64_t excursions = 0;
  double theta_lower = 0.0;           // p_0 / p_kappa
  std::vector<double> survival;       // survival[x] = P(h_1 > x)
  std::vector<double> lower_bound;    // explicit bound per x
  std::vector<double> std_errors;     // binomial standard error per x
  double fitted_rate = 0.0;           // -slope of log survival
  double rate_std_error = 0.0;
  double fit_r2 = 0.0;
  bool monotone_ok = false;
  bool lower_bound_ok = false;        // survival >= bound - 3 se at every x
  bool rate_ok = false;               // fitted rate >= log(theta_lower) - 3 se
};

/// Fit an exponential tail to sampled excursion heights and compare against
/// the explicit lower bound (p0-pk)/((p0+pk) theta^(x+1)).
ExcursionTailFit excursion_tail_fit(const ColorDist& p, std::int64_t excursions,
                                    std::int64_t x_max, std::uint64_t seed);

}  // namespace bbs
