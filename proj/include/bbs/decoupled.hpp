#pragma once

#include <cstdint>
#include <vector>

#include "bbs/carrier.hpp"
#include "bbs/random_models.hpp"

namespace bbs {

/// The unstable colors alpha_0 = 0 < alpha_1 < ... < alpha_r of a ball
/// density: color i is unstable iff i = 0 or p_i >= max(p_{i+1..kappa}, p_0).
/// They split the color ring into the intervals [alpha_j, alpha_{j+1}),
/// with alpha_{r+1} = kappa + 1.
struct UnstableSet {
  int kappa = 0;
  std::vector<Color> alphas;

  bool contains(Color c) const;
  Color alpha_r() const { return alphas.back(); }
  int r() const { return static_cast<int>(alphas.size()) - 1; }
  /// Largest unstable color < y, for 1 <= y <= kappa + 1.
  Color interval_floor(Color y) const;
  /// Smallest unstable color > y, or kappa + 1 when none exists.
  Color interval_ceil(Color y) const;
};

UnstableSet unstable_colors(const ColorDist& p);

/// The unique unstable color (mod kappa+1) that can replace balls of color
/// ell under the localized rule: kappa + 1 when ell >= alpha_r, otherwise
/// the smallest unstable color above ell.
Color ell_plus(Color ell, const UnstableSet& u);

/// Localized circular-exclusion transition on an unbounded carrier: input 0
/// is read as color kappa + 1, and a replacement happens only when the
/// would-be replaced entry lies in the input's own interval; otherwise the
/// input is inserted without removing anything. Returns the expelled color.
Color decoupled_step(Carrier& carrier, Color y, const UnstableSet& u);

/// Localized sweep over a finite configuration (sites 1..support_end).
CarrierTrace run_decoupled(const BallConfig& config, const UnstableSet& u);

/// Localized sweep over an explicit color stream.
CarrierTrace run_decoupled(const std::vector<Color>& stream, const UnstableSet& u, int kappa);

/// One-step increment g_ell of the color-ell ball count when it is free to
/// go negative: +1 if the next color is ell; -1 if the next color is
/// q in [ell+1, ell_plus] (with input 0 read as kappa+1) and no ball of a
/// color strictly between ell and q is held; else 0.
/// stable_mults lists the multiplicities of colors ell+1 .. ell_plus - 1.
int g_functional(const std::vector<std::int64_t>& stable_mults, Color next_color, Color ell,
                 const UnstableSet& u);

/// Same increment read directly off a carrier state.
int g_increment(const Carrier& carrier, Color next_color, Color ell, const UnstableSet& u);

/// Partial sums S_0 = 0, S_t = sum of g_ell over the first t inputs.
/// Satisfies m_ell(carrier at t) = S_t - min_{s <= t} S_s.
struct AdditivePath {
  std::vector<std::int64_t> values;

  std::int64_t horizon() const { return static_cast<std::int64_t>(values.size()) - 1; }
  std::int64_t at(std::int64_t t) const { return values[static_cast<std::size_t>(t)]; }
};

AdditivePath additive_path(const std::vector<Color>& stream, const ColorDist& p, Color ell);

/// Product of independent geometric laws, one per tracked color
/// (P(N_i = n) = (1 - rho_i) rho_i^n).
class ProductGeometric {
 public:
  ProductGeometric() = default;
  ProductGeometric(std::vector<Color> colors, std::vector<double> ratios);

  const std::vector<Color>& colors() const { return colors_; }
  const std::vector<double>& ratios() const { return ratios_; }
  /// counts aligned with colors().
  double pmf(const std::vector<std::int64_t>& counts) const;
  double origin_mass() const;
  std::vector<std::int64_t> sample(SplitRng& rng) const;
  /// Per-color bounds a_i with joint tail mass P(any N_i > a_i) < eps.
  std::vector<std::int64_t> truncation_box(double eps) const;

 private:
  std::vector<Color> colors_;
  std::vector<double> ratios_;
};

/// Stationary law of the carrier multiplicities (m_1, ..., m_kappa) in the
/// subcritical phase: geometric with ratio p_i / p_0 per color.
/// Throws std::domain_error unless p_0 > max(p_1, ..., p_kappa).
ProductGeometric stationary_pi_subcritical(const ColorDist& p);

/// Stationary law of the stable-color multiplicities of the localized
/// carrier: geometric with ratio p_i / p_{alpha_{j+1}} for each stable color
/// i in (alpha_j, alpha_{j+1}), where p_{kappa+1} = p_0.
ProductGeometric stationary_pi_decoupled(const ColorDist& p);

struct GammaEstimate {
  double gamma2 = 0.0;
  double std_error = 0.0;
  double mean_increment = 0.0;
  std::int64_t steps = 0;
  std::int64_t batches = 0;

  /// Run summary {p, ell, steps, seed, mean_increment, gamma2, stderr}.
  std::string to_json(const ColorDist& p, Color ell, std::uint64_t seed) const;
};

/// Batch-means estimate of the limiting variance of the additive functional
/// for color ell, with a jackknife standard error. batches <= 1 selects
/// round(sqrt(steps)) batches.
GammaEstimate estimate_gamma(const ColorDist& p, Color ell, std::int64_t steps,
                             std::int64_t batches, std::uint64_t seed);

}  // namespace bbs
