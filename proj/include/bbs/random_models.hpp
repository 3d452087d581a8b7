#pragma once

#include <cstdint>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

/// Ball density: a probability vector over colors 0..kappa with every entry
/// strictly positive.
class ColorDist {
 public:
  explicit ColorDist(std::vector<double> probs);

  int kappa() const { return static_cast<int>(p_.size()) - 1; }
  double operator[](Color c) const { return p_[static_cast<std::size_t>(c)]; }
  const std::vector<double>& probs() const { return p_; }
  double p0() const { return p_[0]; }
  /// Largest positive-color density max(p_1, ..., p_kappa).
  double p_star() const;
  /// Cumulative sums c_0 < c_1 < ... with c_kappa forced to exactly 1.
  std::vector<double> cdf() const;

 private:
  std::vector<double> p_;
};

/// Counter-based splittable generator: (seed, stream) fully determines the
/// output sequence, so trial t can be replayed without generating trials
/// before it. SplitMix64 core; identical output on every platform.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  /// Uniform on [0,1), 53 random bits.
  double next_unit();
  /// Uniform on {0, ..., n-1}.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// The i.i.d. uniforms underlying gen_permutation, exposed so the same
/// sequence can drive the continuous exclusion process.
std::vector<double> gen_uniforms(std::int64_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform random n-color configuration on sites 1..n: site x carries the
/// rank of the x-th uniform among gen_uniforms(n, seed, stream).
BallConfig gen_permutation(std::int64_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Sites 1..n i.i.d. from p, empty beyond.
BallConfig gen_iid(std::int64_t n, const ColorDist& p, std::uint64_t seed,
                   std::uint64_t stream = 0);

/// Color for a uniform draw under the half-open bins [c_{i-1}, c_i).
Color sample_color(const std::vector<double>& cdf, double u);

/// n i.i.d. colors straight from the generator (no configuration trimming).
std::vector<Color> gen_iid_stream(std::int64_t n, const ColorDist& p, SplitRng& rng);

}  // namespace bbs
