#include "bbs/decoupled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace bbs {

std::string GammaEstimate::to_json(const ColorDist& p, Color ell, std::uint64_t seed) const {
  nlohmann::json j{{"schema", "bbs-lab/1"}, {"p", p.probs()},
                   {"ell", ell},            {"steps", steps},
                   {"seed", seed},          {"mean_increment", mean_increment},
                   {"gamma2", gamma2},      {"stderr", std_error},
                   {"batches", batches}};
  return j.dump(2);
}

bool UnstableSet::contains(Color c) const {
  return std::binary_search(alphas.begin(), alphas.end(), c);
}

Color UnstableSet::interval_floor(Color y) const {
  if (y < 1 || y > kappa + 1) throw std::invalid_argument("interval_floor: color out of range");
  auto it = std::lower_bound(alphas.begin(), alphas.end(), y);
  return *std::prev(it);  // alphas starts with 0 < y
}

Color UnstableSet::interval_ceil(Color y) const {
  auto it = std::upper_bound(alphas.begin(), alphas.end(), y);
  return it == alphas.end() ? kappa + 1 : *it;
}

UnstableSet unstable_colors(const ColorDist& p) {
  const int kappa = p.kappa();
  UnstableSet u;
  u.kappa = kappa;
  u.alphas = {0};
  std::vector<double> suffix_max(static_cast<std::size_t>(kappa) + 2, 0.0);
  for (Color i = kappa; i >= 1; --i) {
    suffix_max[static_cast<std::size_t>(i)] =
        std::max(suffix_max[static_cast<std::size_t>(i) + 1], p[i]);
  }
  for (Color i = 1; i <= kappa; ++i) {
    if (p[i] >= std::max(suffix_max[static_cast<std::size_t>(i) + 1], p.p0()))
      u.alphas.push_back(i);
  }
  return u;
}

Color ell_plus(Color ell, const UnstableSet& u) {
  if (ell < 1 || ell > u.kappa) throw std::invalid_argument("ell_plus: color out of range");
  if (ell >= u.alpha_r()) return u.kappa + 1;
  return u.interval_ceil(ell);
}

Color decoupled_step(Carrier& carrier, Color y, const UnstableSet& u) {
  if (!carrier.is_unbounded())
    throw std::invalid_argument("decoupled_step: carrier must be unbounded");
  if (carrier.kappa() != u.kappa)
    throw std::invalid_argument("decoupled_step: kappa mismatch");
  if (y < 0 || y > u.kappa) throw std::invalid_argument("decoupled_step: invalid color");

  const Color yy = (y == 0) ? u.kappa + 1 : y;  // input 0 acts as color kappa+1
  const Color lo = u.interval_floor(yy);
  const Color hi = u.interval_ceil(lo);

  Color candidate = 0;  // largest held color below yy, else an empty slot
  for (Color c = std::min(yy - 1, u.kappa); c >= 1; --c) {
    if (carrier.mult(c) > 0) {
      candidate = c;
      break;
    }
  }
  if (candidate >= lo && candidate < hi) {
    if (candidate >= 1) carrier.remove_ball(candidate);
    if (yy <= u.kappa) carrier.insert_ball(yy);
    return candidate;
  }
  if (yy <= u.kappa) carrier.insert_ball(yy);
  return 0;
}

namespace {

CarrierTrace run_decoupled_impl(const std::vector<Color>& stream, const UnstableSet& u,
                                int kappa) {
  Carrier car = Carrier::unbounded(kappa);
  CarrierTrace trace;
  trace.kappa = kappa;
  trace.capacity = kUnboundedCapacity;
  auto record_state = [&] {
    for (Color c = 1; c <= kappa; ++c) trace.mults.push_back(car.mult(c));
  };
  record_state();
  for (Color y : stream) {
    trace.expelled.push_back(decoupled_step(car, y, u));
    record_state();
  }
  return trace;
}

}  // namespace

CarrierTrace run_decoupled(const BallConfig& config, const UnstableSet& u) {
  return run_decoupled_impl(config.cells(), u, config.kappa());
}

CarrierTrace run_decoupled(const std::vector<Color>& stream, const UnstableSet& u, int kappa) {
  return run_decoupled_impl(stream, u, kappa);
}

int g_functional(const std::vector<std::int64_t>& stable_mults, Color next_color, Color ell,
                 const UnstableSet& u) {
  const Color lp = ell_plus(ell, u);
  if (static_cast<std::int64_t>(stable_mults.size()) != lp - ell - 1)
    throw std::invalid_argument("g_functional: expected one multiplicity per color in (ell, ell_plus)");
  if (next_color < 0 || next_color > u.kappa)
    throw std::invalid_argument("g_functional: invalid color");
  if (next_color == ell) return 1;
  const Color k = (next_color == 0) ? u.kappa + 1 : next_color;
  if (k < ell + 1 || k > lp) return 0;
  for (Color c = ell + 1; c < k; ++c) {
    if (stable_mults[static_cast<std::size_t>(c - ell - 1)] != 0) return 0;
  }
  return -1;
}

int g_increment(const Carrier& carrier, Color next_color, Color ell, const UnstableSet& u) {
  const Color lp = ell_plus(ell, u);
  if (next_color == ell) return 1;
  const Color k = (next_color == 0) ? u.kappa + 1 : next_color;
  if (k < ell + 1 || k > lp) return 0;
  for (Color c = ell + 1; c < k; ++c) {
    if (carrier.mult(c) != 0) return 0;
  }
  return -1;
}

AdditivePath additive_path(const std::vector<Color>& stream, const ColorDist& p, Color ell) {
  const UnstableSet u = unstable_colors(p);
  Carrier car = Carrier::unbounded(p.kappa());
  AdditivePath path;
  path.values.reserve(stream.size() + 1);
  path.values.push_back(0);
  std::int64_t s = 0;
  for (Color y : stream) {
    s += g_increment(car, y, ell, u);
    decoupled_step(car, y, u);
    path.values.push_back(s);
  }
  return path;
}

ProductGeometric::ProductGeometric(std::vector<Color> colors, std::vector<double> ratios)
    : colors_(std::move(colors)), ratios_(std::move(ratios)) {
  if (colors_.size() != ratios_.size())
    throw std::invalid_argument("ProductGeometric: colors/ratios size mismatch");
  for (double r : ratios_) {
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("ProductGeometric: ratios must lie in (0,1)");
  }
}

double ProductGeometric::pmf(const std::vector<std::int64_t>& counts) const {
  if (counts.size() != ratios_.size())
    throw std::invalid_argument("ProductGeometric::pmf: wrong count vector length");
  double m = 1.0;
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    if (counts[i] < 0) return 0.0;
    m *= (1.0 - ratios_[i]) * std::pow(ratios_[i], static_cast<double>(counts[i]));
  }
  return m;
}

double ProductGeometric::origin_mass() const {
  double m = 1.0;
  for (double r : ratios_) m *= 1.0 - r;
  return m;
}

std::vector<std::int64_t> ProductGeometric::sample(SplitRng& rng) const {
  std::vector<std::int64_t> counts(ratios_.size());
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    // P(N >= n) = rho^n
    const double x = std::log1p(-rng.next_unit()) / std::log(ratios_[i]);
    counts[i] = static_cast<std::int64_t>(std::floor(x));
  }
  return counts;
}

std::vector<std::int64_t> ProductGeometric::truncation_box(double eps) const {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("ProductGeometric::truncation_box: eps in (0,1)");
  std::vector<std::int64_t> box(ratios_.size());
  const double share = eps / static_cast<double>(std::max<std::size_t>(ratios_.size(), 1));
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    // P(N_i > a) = rho^{a+1} <= share
    const double a = std::log(share) / std::log(ratios_[i]) - 1.0;
    box[i] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(a)));
  }
  return box;
}

ProductGeometric stationary_pi_subcritical(const ColorDist& p) {
  if (!(p.p0() > p.p_star()))
    throw std::domain_error("stationary_pi_subcritical: requires p0 > max(p_1..p_kappa)");
  std::vector<Color> colors;
  std::vector<double> ratios;
  for (Color c = 1; c <= p.kappa(); ++c) {
    colors.push_back(c);
    ratios.push_back(p[c] / p.p0());
  }
  return ProductGeometric(std::move(colors), std::move(ratios));
}

ProductGeometric stationary_pi_decoupled(const ColorDist& p) {
  const UnstableSet u = unstable_colors(p);
  std::vector<Color> colors;
  std::vector<double> ratios;
  for (Color c = 1; c <= p.kappa(); ++c) {
    if (u.contains(c)) continue;
    const Color up = u.interval_ceil(c);
    const double p_up = (up <= p.kappa()) ? p[up] : p.p0();
    colors.push_back(c);
    ratios.push_back(p[c] / p_up);
  }
  return ProductGeometric(std::move(colors), std::move(ratios));
}

GammaEstimate estimate_gamma(const ColorDist& p, Color ell, std::int64_t steps,
                             std::int64_t batches, std::uint64_t seed) {
  if (ell < 1 || ell > p.kappa()) throw std::invalid_argument("estimate_gamma: invalid color");
  if (steps < 100) throw std::invalid_argument("estimate_gamma: too few steps");
  if (batches <= 1)
    batches = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::llround(
                                            std::sqrt(static_cast<double>(steps)))));
  const std::int64_t batch_len = steps / batches;
  if (batch_len < 1) throw std::invalid_argument("estimate_gamma: more batches than steps");

  const UnstableSet u = unstable_colors(p);
  const auto cdf = p.cdf();
  SplitRng rng(seed, 0);
  Carrier car = Carrier::unbounded(p.kappa());
  for (std::int64_t t = 0; t < steps / 10; ++t) {
    decoupled_step(car, sample_color(cdf, rng.next_unit()), u);
  }

  std::vector<double> batch_mean(static_cast<std::size_t>(batches));
  double total = 0.0;
  for (std::int64_t b = 0; b < batches; ++b) {
    std::int64_t sum = 0;
    for (std::int64_t t = 0; t < batch_len; ++t) {
      const Color y = sample_color(cdf, rng.next_unit());
      sum += g_increment(car, y, ell, u);
      decoupled_step(car, y, u);
    }
    batch_mean[static_cast<std::size_t>(b)] =
        static_cast<double>(sum) / static_cast<double>(batch_len);
    total += static_cast<double>(sum);
  }

  const double grand = total / static_cast<double>(batch_len * batches);
  double s1 = 0.0, s2 = 0.0;
  for (double m : batch_mean) {
    s1 += m;
    s2 += m * m;
  }
  const double nb = static_cast<double>(batches);
  const double var_means = (s2 - s1 * s1 / nb) / (nb - 1.0);
  const double gamma2 = static_cast<double>(batch_len) * var_means;

  // jackknife over batches
  double jk_sum = 0.0, jk_sq = 0.0;
  for (double m : batch_mean) {
    const double s1i = s1 - m, s2i = s2 - m * m;
    const double vari = (s2i - s1i * s1i / (nb - 1.0)) / (nb - 2.0);
    const double g2i = static_cast<double>(batch_len) * vari;
    jk_sum += g2i;
    jk_sq += g2i * g2i;
  }
  const double jk_mean = jk_sum / nb;
  const double std_error = std::sqrt(std::max(0.0, (nb - 1.0) / nb * (jk_sq - nb * jk_mean * jk_mean)));

  GammaEstimate est;
  est.gamma2 = gamma2;
  est.std_error = std_error;
  est.mean_increment = grand;
  est.steps = batch_len * batches;
  est.batches = batches;
  return est;
}

}  // namespace bbs
