#include "bbs/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bbs {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

ColorDist::ColorDist(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.size() < 2) throw std::invalid_argument("ColorDist: need colors 0..kappa, kappa >= 1");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x > 0.0)) throw std::invalid_argument("ColorDist: every density must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ColorDist: densities must sum to 1");
}

double ColorDist::p_star() const {
  return *std::max_element(p_.begin() + 1, p_.end());
}

std::vector<double> ColorDist::cdf() const {
  std::vector<double> c(p_.size());
  std::partial_sum(p_.begin(), p_.end(), c.begin());
  c.back() = 1.0;
  return c;
}

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden) ^
             mix64(stream * 0xD2B74407B1CE6E93ull + 0x8BB84B93962EACC9ull)) {}

std::uint64_t SplitRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitRng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitRng::next_below: n must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > limit);
  return x % n;
}

std::vector<double> gen_uniforms(std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 0) throw std::invalid_argument("gen_uniforms: n must be non-negative");
  SplitRng rng(seed, stream);
  std::vector<double> us(static_cast<std::size_t>(n));
  for (double& u : us) u = rng.next_unit();
  return us;
}

BallConfig gen_permutation(std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("gen_permutation: n must be positive");
  const auto us = gen_uniforms(n, seed, stream);
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return us[static_cast<std::size_t>(a)] != us[static_cast<std::size_t>(b)]
               ? us[static_cast<std::size_t>(a)] < us[static_cast<std::size_t>(b)]
               : a < b;
  });
  std::vector<Color> cells(static_cast<std::size_t>(n));
  for (std::int64_t rank = 0; rank < n; ++rank) {
    cells[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] =
        static_cast<Color>(rank + 1);
  }
  return BallConfig(static_cast<int>(n), std::move(cells));
}

Color sample_color(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<Color>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

BallConfig gen_iid(std::int64_t n, const ColorDist& p, std::uint64_t seed,
                   std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("gen_iid: n must be positive");
  SplitRng rng(seed, stream);
  const auto cdf = p.cdf();
  std::vector<Color> cells(static_cast<std::size_t>(n));
  for (Color& c : cells) c = sample_color(cdf, rng.next_unit());
  return BallConfig(p.kappa(), std::move(cells));
}

std::vector<Color> gen_iid_stream(std::int64_t n, const ColorDist& p, SplitRng& rng) {
  const auto cdf = p.cdf();
  std::vector<Color> xs(static_cast<std::size_t>(n));
  for (Color& c : xs) c = sample_color(cdf, rng.next_unit());
  return xs;
}

}  // namespace bbs
