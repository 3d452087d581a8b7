#include "bbs/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbs/stats.hpp"

namespace bbs {

std::vector<std::int64_t> ExcursionSummary::sorted_heights() const {
  std::vector<std::int64_t> hs = heights;
  std::sort(hs.rbegin(), hs.rend());
  return hs;
}

ExcursionSummary decompose_heights(const std::vector<std::int64_t>& height_path,
                                   std::int64_t n) {
  if (height_path.empty() || height_path.front() != 0)
    throw std::invalid_argument("decompose_heights: path must start at 0");
  ExcursionSummary out;
  std::int64_t cur = 0;
  const std::int64_t len = static_cast<std::int64_t>(height_path.size());
  for (std::int64_t t = 1; t <= n; ++t) {
    const std::int64_t h = t < len ? height_path[static_cast<std::size_t>(t)] : 0;
    cur = std::max(cur, h);
    if (h == 0) {
      out.return_times.push_back(t);
      out.heights.push_back(cur);
      cur = 0;
    }
  }
  out.completed = static_cast<std::int64_t>(out.heights.size());
  out.meander = cur;
  return out;
}

ExcursionSummary decompose(const CarrierTrace& trace, std::int64_t n) {
  return decompose_heights(trace.heights(), n);
}

bool check_soliton_bounds(const BallConfig& config, std::int64_t n) {
  if (config.support_end() > n)
    throw std::invalid_argument("check_soliton_bounds: config must be supported in [1, n]");
  const ExcursionSummary ex = decompose_heights(carrier_height_path(config), n);
  const std::vector<std::int64_t> cols = young_diagram(config).conjugate();
  const auto lambda = [&](std::int64_t j) {
    return j <= static_cast<std::int64_t>(cols.size()) ? cols[static_cast<std::size_t>(j - 1)]
                                                       : 0;
  };
  std::int64_t max_completed = 0;
  for (std::int64_t h : ex.heights) max_completed = std::max(max_completed, h);
  // Past the support the carrier only drains, so the excursion open at time n
  // tops out at the meander height.
  const std::int64_t next_height = ex.meander;
  if (!(max_completed <= lambda(1) && lambda(1) <= std::max(max_completed, next_height)))
    return false;
  const auto sorted = ex.sorted_heights();
  for (std::int64_t j = 1; j <= ex.completed; ++j) {
    if (lambda(j) < sorted[static_cast<std::size_t>(j - 1)]) return false;
  }
  return true;
}

std::vector<std::int64_t> sample_excursion_heights(const ColorDist& p, std::int64_t count,
                                                   SplitRng& rng) {
  if (count < 1) throw std::invalid_argument("sample_excursion_heights: count must be positive");
  const auto cdf = p.cdf();
  Carrier car = Carrier::unbounded(p.kappa());
  std::vector<std::int64_t> heights;
  heights.reserve(static_cast<std::size_t>(count));
  std::int64_t cur = 0;
  const std::int64_t step_limit = count * 100000;
  std::int64_t steps = 0;
  while (static_cast<std::int64_t>(heights.size()) < count) {
    if (++steps > step_limit)
      throw std::runtime_error("sample_excursion_heights: chain does not return; density recurrent?");
    car.step(sample_color(cdf, rng.next_unit()));
    cur = std::max(cur, car.held());
    if (car.held() == 0) {
      heights.push_back(cur);
      cur = 0;
    }
  }
  return heights;
}

double kappa1_height_survival(const ColorDist& p, std::int64_t x) {
  if (p.kappa() != 1) throw std::invalid_argument("kappa1_height_survival: requires kappa = 1");
  if (!(p.p0() > p[1])) throw std::domain_error("kappa1_height_survival: requires p0 > p1");
  if (x < 0) return 1.0;
  const double theta = p.p0() / p[1];
  return (1.0 - 2.0 * p[1]) / (std::pow(theta, static_cast<double>(x + 1)) - 1.0);
}

ExcursionTailFit excursion_tail_fit(const ColorDist& p, std::int64_t excursions,
                                    std::int64_t x_max, std::uint64_t seed) {
  if (!(p.p0() > p.p_star()))
    throw std::domain_error("excursion_tail_fit: requires a subcritical density");
  SplitRng rng(seed, 0);
  const auto heights = sample_excursion_heights(p, excursions, rng);

  ExcursionTailFit fit;
  fit.excursions = excursions;
  fit.theta_lower = p.p0() / p[p.kappa()];
  const double pk = p[p.kappa()];
  const double nd = static_cast<double>(excursions);
  for (std::int64_t x = 0; x <= x_max; ++x) {
    std::int64_t exceed = 0;
    for (std::int64_t h : heights) exceed += h > x;
    const double s = static_cast<double>(exceed) / nd;
    fit.survival.push_back(s);
    fit.std_errors.push_back(std::sqrt(std::max(s * (1.0 - s), 1.0 / nd) / nd));
    fit.lower_bound.push_back((p.p0() - pk) / (p.p0() + pk) /
                              std::pow(fit.theta_lower, static_cast<double>(x + 1)));
  }

  fit.monotone_ok = true;
  for (std::size_t i = 1; i < fit.survival.size(); ++i) {
    if (fit.survival[i] > fit.survival[i - 1]) fit.monotone_ok = false;
  }
  fit.lower_bound_ok = true;
  for (std::size_t i = 0; i < fit.survival.size(); ++i) {
    if (fit.survival[i] < fit.lower_bound[i] - 3.0 * fit.std_errors[i]) fit.lower_bound_ok = false;
  }

  // least squares on log survival where at least 50 exceedances remain
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fit.survival.size(); ++i) {
    if (fit.survival[i] * nd >= 50.0) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log(fit.survival[i]));
    }
  }
  if (xs.size() >= 3) {
    const LinearFit lf = linear_fit(xs, ys);
    fit.fitted_rate = -lf.slope;
    fit.rate_std_error = lf.slope_std_error;
    fit.fit_r2 = lf.r2;
    fit.rate_ok = fit.fitted_rate >= std::log(fit.theta_lower) - 3.0 * fit.rate_std_error;
  }
  return fit;
}

}  // namespace bbs
