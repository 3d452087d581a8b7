#include "bbs/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bbs {

namespace {

void validate_sites(const SiteSet& sites) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 1) throw std::invalid_argument("SiteSet: sites are 1-based");
    if (i > 0 && sites[i] <= sites[i - 1])
      throw std::invalid_argument("SiteSet: sites must be strictly increasing");
  }
}

}  // namespace

std::int64_t num_ascents(const SiteSet& sites, const BallConfig& config) {
  validate_sites(sites);
  if (sites.empty()) return 0;
  std::int64_t na = 1;
  for (std::size_t i = 1; i < sites.size(); ++i) {
    na += config.at(sites[i - 1]) < config.at(sites[i]);
  }
  return na;
}

std::int64_t penalized_length(const SiteSet& sites, const BallConfig& config) {
  validate_sites(sites);
  if (sites.empty()) return 0;
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (config.at(sites[i - 1]) < config.at(sites[i])) return 0;
  }
  std::int64_t zeros = 0;
  for (std::int64_t s = sites.front(); s <= sites.back(); ++s) zeros += config.at(s) == 0;
  return static_cast<std::int64_t>(sites.size()) - zeros;
}

std::int64_t gk_rows_bruteforce(const BallConfig& config, int k) {
  if (k < 1) throw std::invalid_argument("gk_rows_bruteforce: k must be positive");
  const std::int64_t window = config.support_end() + 1;
  if (config.support_end() == 0) return 0;
  if (static_cast<double>(window) * std::log2(static_cast<double>(k) + 1.0) > 28.0)
    throw std::length_error("gk_rows_bruteforce: instance too large for exhaustive search");

  std::vector<Color> values(static_cast<std::size_t>(window));
  for (std::int64_t s = 1; s <= window; ++s)
    values[static_cast<std::size_t>(s - 1)] = config.at(s);

  std::vector<Color> last(static_cast<std::size_t>(k), 0);
  std::int64_t best = 0;
  std::function<void(std::int64_t, std::int64_t)> assign =
      [&](std::int64_t idx, std::int64_t gain) {
        best = std::max(best, gain);
        if (idx == window) return;
        if (gain + (window - idx) <= best) return;  // each site adds at most one ascent
        const Color v = values[static_cast<std::size_t>(idx)];
        assign(idx + 1, gain);  // leave the site out
        for (int i = 0; i < k; ++i) {
          bool duplicate = false;  // classes with equal last value are interchangeable
          for (int j = 0; j < i; ++j) {
            if (last[static_cast<std::size_t>(j)] == last[static_cast<std::size_t>(i)]) {
              duplicate = true;
              break;
            }
          }
          if (duplicate) continue;
          const Color prev = last[static_cast<std::size_t>(i)];
          last[static_cast<std::size_t>(i)] = v;
          assign(idx + 1, gain + (prev < v ? 1 : 0));
          last[static_cast<std::size_t>(i)] = prev;
        }
      };
  assign(0, 0);
  return best;
}

std::int64_t gk_cols(const BallConfig& config, int k) {
  if (k < 1) throw std::invalid_argument("gk_cols: k must be positive");
  const std::int64_t n = config.support_end();
  if (n == 0) return 0;
  if (n > 4096) throw std::length_error("gk_cols: dynamic program limited to support <= 4096");

  // zeros[i] = number of empty sites among 1..i
  std::vector<std::int64_t> zeros(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 1; i <= n; ++i)
    zeros[static_cast<std::size_t>(i)] = zeros[static_cast<std::size_t>(i - 1)] + (config.at(i) == 0);

  // window[s][e] = best penalized length of a single non-increasing set
  // inside [s, e]: its longest non-increasing positive subsequence minus the
  // empty sites of [s, e]. The enclosing maximization over s recovers sets
  // whose span is smaller than the window.
  std::vector<std::vector<std::int64_t>> window(
      static_cast<std::size_t>(n) + 1,
      std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
  for (std::int64_t s = 1; s <= n; ++s) {
    std::vector<Color> tails;  // negated values; longest non-decreasing subsequence
    for (std::int64_t e = s; e <= n; ++e) {
      const Color v = config.at(e);
      if (v > 0) {
        const Color x = -v;
        auto it = std::upper_bound(tails.begin(), tails.end(), x);
        if (it == tails.end()) tails.push_back(x);
        else *it = x;
      }
      window[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)] =
          static_cast<std::int64_t>(tails.size()) -
          (zeros[static_cast<std::size_t>(e)] - zeros[static_cast<std::size_t>(s - 1)]);
    }
  }

  // dp over j ordered disjoint windows covering a prefix
  std::vector<std::int64_t> prev(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> cur(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= k; ++j) {
    for (std::int64_t e = 1; e <= n; ++e) {
      std::int64_t v = std::max(cur[static_cast<std::size_t>(e - 1)],
                                prev[static_cast<std::size_t>(e)]);
      for (std::int64_t s = 1; s <= e; ++s) {
        v = std::max(v, prev[static_cast<std::size_t>(s - 1)] +
                            window[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)]);
      }
      cur[static_cast<std::size_t>(e)] = v;
    }
    prev = cur;
  }
  return prev[static_cast<std::size_t>(n)];
}

}  // namespace bbs
