#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bbs/carrier.hpp"
#include "bbs/random_models.hpp"

namespace bbs {

enum class Phase { Subcritical, Critical, SimpleSupercritical, NonSimpleSupercritical };

struct PhaseLabel {
  Phase phase = Phase::Subcritical;
  /// Critical: number of positive colors tying p_0. Supercritical: number of
  /// colors achieving p_star. Subcritical: 0.
  int ties = 0;

  std::string to_string() const;
};

/// Phase of the independence model from the sign of p_star - p_0 and the
/// multiplicity of the maximizer.
PhaseLabel phase_classify(const ColorDist& p);

/// Run fn(trial) for trial = 0..trials-1, optionally across worker threads.
/// Results must be written into per-trial slots so output is identical for
/// any worker count. workers <= 0 selects the hardware concurrency.
void for_each_trial(std::int64_t trials, int workers,
                    const std::function<void(std::int64_t)>& fn);

struct StatSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::int64_t count = 0;

  static StatSummary of(const std::vector<double>& xs);
};

struct ScalingCell {
  std::int64_t n = 0;
  int index = 0;  // row/column index k
  StatSummary rho;
  StatSummary lambda;
};

/// Per-n, per-index soliton statistics with everything needed for bit-exact
/// replay embedded.
struct ScalingReport {
  std::string model;  // "permutation" or "independence"
  std::uint64_t seed = 0;
  std::uint64_t stream_offset = 0;
  std::int64_t trials = 0;
  int k_max = 0;
  std::vector<std::int64_t> n_list;
  std::vector<double> p;  // empty for the permutation model
  bool low_sample = false;
  std::vector<std::vector<ScalingCell>> cells;  //[n_index][k-1]
  /// log-log slope of mean lambda_j against n, per j (when >= 2 sizes).
  std::vector<double> lambda_exponents;
  std::int64_t verify_checked = 0;
  std::int64_t verify_failed = 0;

  std::string to_json() const;
  std::string to_csv() const;
};

ScalingReport mc_permutation(const std::vector<std::int64_t>& n_list, std::int64_t trials,
                             int k_max, std::uint64_t seed, std::uint64_t stream_offset = 0,
                             int workers = 0, bool verify = false);

ScalingReport mc_independence(const std::vector<std::int64_t>& n_list, const ColorDist& p,
                              std::int64_t trials, int j_max, std::uint64_t seed,
                              std::uint64_t stream_offset = 0, int workers = 0,
                              bool verify = false);

struct NormalityReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t n = 0;
  std::vector<double> p;
  double mean_lambda1_over_n = 0.0;
  double se_lambda1_over_n = 0.0;
  double target_ratio = 0.0;  // p_star - p_0
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_vs_normal = 0.0;
  double var_n = 0.0;
  double var_2n = 0.0;
  double var_ratio = 0.0;

  std::string to_json() const;
};

/// Standardized lambda_1 samples at n (and variance growth against 2n) in a
/// supercritical phase.
NormalityReport clt_supercritical(const ColorDist& p, std::int64_t n, std::int64_t trials,
                                  std::uint64_t seed, int workers = 0);

struct CriticalProfileReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t n = 0;
  std::vector<double> p;
  int r = 0;                    // number of colors tying p_0
  double gamma_hat = 0.0;       // sqrt of the estimated limiting variance
  int gamma_ell = 0;            // color whose additive functional was measured
  double gamma2 = 0.0;
  double gamma_std_error = 0.0;
  double gamma_mean_increment = 0.0;
  std::int64_t gamma_steps = 0;
  double ks_vs_reflected = 0.0; // only meaningful when r == 1
  double median_ratio_4x = 0.0; // median lambda_1(n) / median lambda_1(n/4)
  std::vector<double> scaled_lambda1;  // n^{-1/2} lambda_1 samples

  std::string to_json() const;
};

/// Distribution of n^{-1/2} lambda_1 at a critical density, compared when
/// r = 1 against gamma_hat times the running maximum of reflected Brownian
/// motion (sampled by a fine random-walk discretization).
CriticalProfileReport critical_profile(const ColorDist& p, std::int64_t n, std::int64_t trials,
                                       std::uint64_t seed, int workers = 0);

/// Samples of max_{0<=u<=1} |B_u| from a fair random walk with the given
/// number of steps; the reference law for critical_profile.
std::vector<double> reflected_bm_max_samples(std::int64_t count, std::int64_t steps,
                                             std::uint64_t seed);

/// Spot verification for a sampled configuration: energy invariance under
/// the cyclic rule, the queue identity for lambda_1, and the excursion
/// bounds. Returns true when every check passes.
bool spot_verify_config(const BallConfig& config);

}  // namespace bbs
