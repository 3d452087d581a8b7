#include "bbs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bbs/decoupled.hpp"
#include "bbs/excursions.hpp"
#include "bbs/stats.hpp"
#include "json.hpp"

namespace bbs {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "bbs-lab/1";

json summary_json(const StatSummary& s) {
  return json{{"mean", s.mean},   {"stderr", s.std_error}, {"median", s.median},
              {"q25", s.q25},     {"q75", s.q75},          {"count", s.count}};
}

}  // namespace

std::string PhaseLabel::to_string() const {
  switch (phase) {
    case Phase::Subcritical: return "subcritical";
    case Phase::Critical: return "critical(r=" + std::to_string(ties) + ")";
    case Phase::SimpleSupercritical: return "simple-supercritical";
    case Phase::NonSimpleSupercritical: return "non-simple-supercritical";
  }
  return "?";
}

PhaseLabel phase_classify(const ColorDist& p) {
  const double p0 = p.p0();
  const double ps = p.p_star();
  int ties = 0;
  for (Color c = 1; c <= p.kappa(); ++c) ties += p[c] == ps;
  if (ps < p0) return {Phase::Subcritical, 0};
  if (ps == p0) return {Phase::Critical, ties};
  return {ties == 1 ? Phase::SimpleSupercritical : Phase::NonSimpleSupercritical, ties};
}

void for_each_trial(std::int64_t trials, int workers,
                    const std::function<void(std::int64_t)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<std::int64_t>(workers, trials));
  if (workers <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t t = w; t < trials; t += workers) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

StatSummary StatSummary::of(const std::vector<double>& xs) {
  StatSummary s;
  s.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return s;
  s.mean = bbs::mean(xs);
  s.std_error = xs.size() > 1 ? std_error_of_mean(xs) : 0.0;
  s.median = quantile(xs, 0.5);
  s.q25 = quantile(xs, 0.25);
  s.q75 = quantile(xs, 0.75);
  return s;
}

bool spot_verify_config(const BallConfig& config) {
  for (std::int64_t j = 1; j <= 3; ++j) {
    if (energy(config, j) != energy(cyclic_step(config), j)) return false;
  }
  const std::int64_t n = std::max<std::int64_t>(config.support_end(), 1);
  const ExcursionSummary ex = decompose_heights(carrier_height_path(config), n);
  std::int64_t peak = ex.meander;
  for (std::int64_t h : ex.heights) peak = std::max(peak, h);
  if (lambda1_queue(config) != peak) return false;
  const auto sorted = ex.sorted_heights();
  for (std::int64_t j = 1; j <= std::min<std::int64_t>(ex.completed, 5); ++j) {
    if (column_length(config, j) < sorted[static_cast<std::size_t>(j - 1)]) return false;
  }
  return true;
}

namespace {

struct TrialColumns {
  std::vector<double> rho;     // per index
  std::vector<double> lambda;  // per index
};

ScalingReport run_scaling(const std::string& model, const std::vector<std::int64_t>& n_list,
                          const std::vector<double>& p, std::int64_t trials, int k_max,
                          std::uint64_t seed, std::uint64_t stream_offset, int workers,
                          bool verify, bool want_rows,
                          const std::function<BallConfig(std::int64_t n, std::uint64_t stream)>& make) {
  if (trials < 1) throw std::invalid_argument("monte carlo: trials must be positive");
  if (k_max < 1) throw std::invalid_argument("monte carlo: k_max must be positive");
  ScalingReport rep;
  rep.model = model;
  rep.seed = seed;
  rep.stream_offset = stream_offset;
  rep.trials = trials;
  rep.k_max = k_max;
  rep.n_list = n_list;
  rep.p = p;
  rep.low_sample = trials < 30;

  std::vector<std::int64_t> verify_fail(static_cast<std::size_t>(trials), 0);
  std::vector<std::int64_t> verify_done(static_cast<std::size_t>(trials), 0);

  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const std::int64_t n = n_list[ni];
    std::vector<TrialColumns> per_trial(static_cast<std::size_t>(trials));
    for_each_trial(trials, workers, [&](std::int64_t t) {
      const std::uint64_t stream =
          stream_offset + static_cast<std::uint64_t>(ni) * static_cast<std::uint64_t>(trials) +
          static_cast<std::uint64_t>(t);
      const BallConfig config = make(n, stream);
      TrialColumns& out = per_trial[static_cast<std::size_t>(t)];
      if (want_rows) {
        std::int64_t prev = 0;
        for (int k = 1; k <= k_max; ++k) {
          const std::int64_t ek = energy(config, k);
          out.rho.push_back(static_cast<double>(ek - prev));
          prev = ek;
        }
      }
      for (int k = 1; k <= k_max; ++k) {
        out.lambda.push_back(static_cast<double>(column_length(config, k)));
      }
      if (verify && t < 4) {
        verify_done[static_cast<std::size_t>(t)] += 1;
        if (!spot_verify_config(config)) verify_fail[static_cast<std::size_t>(t)] += 1;
      }
    });

    std::vector<ScalingCell> row;
    for (int k = 1; k <= k_max; ++k) {
      ScalingCell cell;
      cell.n = n;
      cell.index = k;
      std::vector<double> lam, rho;
      for (const auto& tc : per_trial) {
        lam.push_back(tc.lambda[static_cast<std::size_t>(k - 1)]);
        if (want_rows) rho.push_back(tc.rho[static_cast<std::size_t>(k - 1)]);
      }
      cell.lambda = StatSummary::of(lam);
      if (want_rows) cell.rho = StatSummary::of(rho);
      row.push_back(cell);
    }
    rep.cells.push_back(std::move(row));
  }

  for (std::int64_t v : verify_done) rep.verify_checked += v;
  for (std::int64_t v : verify_fail) rep.verify_failed += v;

  if (n_list.size() >= 2) {
    for (int k = 1; k <= k_max; ++k) {
      std::vector<double> lx, ly;
      for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const double m = rep.cells[ni][static_cast<std::size_t>(k - 1)].lambda.mean;
        if (m > 0.0) {
          lx.push_back(std::log(static_cast<double>(n_list[ni])));
          ly.push_back(std::log(m));
        }
      }
      rep.lambda_exponents.push_back(lx.size() >= 2 ? linear_fit(lx, ly).slope : 0.0);
    }
  }
  return rep;
}

}  // namespace

ScalingReport mc_permutation(const std::vector<std::int64_t>& n_list, std::int64_t trials,
                             int k_max, std::uint64_t seed, std::uint64_t stream_offset,
                             int workers, bool verify) {
  return run_scaling("permutation", n_list, {}, trials, k_max, seed, stream_offset, workers,
                     verify, /*want_rows=*/true, [&](std::int64_t n, std::uint64_t stream) {
                       return gen_permutation(n, seed, stream);
                     });
}

ScalingReport mc_independence(const std::vector<std::int64_t>& n_list, const ColorDist& p,
                              std::int64_t trials, int j_max, std::uint64_t seed,
                              std::uint64_t stream_offset, int workers, bool verify) {
  return run_scaling("independence", n_list, p.probs(), trials, j_max, seed, stream_offset,
                     workers, verify, /*want_rows=*/false,
                     [&](std::int64_t n, std::uint64_t stream) {
                       return gen_iid(n, p, seed, stream);
                     });
}

NormalityReport clt_supercritical(const ColorDist& p, std::int64_t n, std::int64_t trials,
                                  std::uint64_t seed, int workers) {
  const PhaseLabel label = phase_classify(p);
  if (label.phase != Phase::SimpleSupercritical && label.phase != Phase::NonSimpleSupercritical)
    throw std::domain_error("clt_supercritical: requires a supercritical density");
  NormalityReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.n = n;
  rep.p = p.probs();
  rep.target_ratio = p.p_star() - p.p0();

  std::vector<double> lam_n(static_cast<std::size_t>(trials));
  std::vector<double> lam_2n(static_cast<std::size_t>(trials));
  for_each_trial(trials, workers, [&](std::int64_t t) {
    lam_n[static_cast<std::size_t>(t)] = static_cast<double>(
        lambda1_queue(gen_iid(n, p, seed, static_cast<std::uint64_t>(t))));
    lam_2n[static_cast<std::size_t>(t)] = static_cast<double>(lambda1_queue(
        gen_iid(2 * n, p, seed, (1ull << 32) + static_cast<std::uint64_t>(t))));
  });

  std::vector<double> ratios;
  for (double v : lam_n) ratios.push_back(v / static_cast<double>(n));
  rep.mean_lambda1_over_n = mean(ratios);
  rep.se_lambda1_over_n = std_error_of_mean(ratios);
  rep.skewness = bbs::skewness(lam_n);
  rep.excess_kurtosis = bbs::excess_kurtosis(lam_n);

  const double m = mean(lam_n);
  const double sd = std::sqrt(sample_variance(lam_n));
  std::vector<double> standardized;
  for (double v : lam_n) standardized.push_back((v - m) / sd);
  rep.ks_vs_normal = ks_statistic(standardized, normal_cdf);

  rep.var_n = sample_variance(lam_n);
  rep.var_2n = sample_variance(lam_2n);
  rep.var_ratio = rep.var_2n / rep.var_n;
  return rep;
}

std::vector<double> reflected_bm_max_samples(std::int64_t count, std::int64_t steps,
                                             std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double scale = 1.0 / std::sqrt(static_cast<double>(steps));
  for (std::int64_t i = 0; i < count; ++i) {
    SplitRng rng(seed, static_cast<std::uint64_t>(i));
    std::int64_t w = 0, peak = 0;
    for (std::int64_t s = 0; s < steps; ++s) {
      w += (rng.next_u64() & 1ull) ? 1 : -1;
      peak = std::max(peak, w < 0 ? -w : w);
    }
    out[static_cast<std::size_t>(i)] = static_cast<double>(peak) * scale;
  }
  return out;
}

CriticalProfileReport critical_profile(const ColorDist& p, std::int64_t n, std::int64_t trials,
                                       std::uint64_t seed, int workers) {
  const PhaseLabel label = phase_classify(p);
  if (label.phase != Phase::Critical)
    throw std::domain_error("critical_profile: requires a critical density");
  CriticalProfileReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.n = n;
  rep.p = p.probs();
  rep.r = label.ties;

  std::vector<double> lam_n(static_cast<std::size_t>(trials));
  std::vector<double> lam_q(static_cast<std::size_t>(trials));  // at n/4
  for_each_trial(trials, workers, [&](std::int64_t t) {
    lam_n[static_cast<std::size_t>(t)] = static_cast<double>(
        lambda1_queue(gen_iid(n, p, seed, static_cast<std::uint64_t>(t))));
    lam_q[static_cast<std::size_t>(t)] = static_cast<double>(lambda1_queue(
        gen_iid(std::max<std::int64_t>(n / 4, 1), p, seed,
                (1ull << 32) + static_cast<std::uint64_t>(t))));
  });

  rep.scaled_lambda1.reserve(lam_n.size());
  for (double v : lam_n)
    rep.scaled_lambda1.push_back(v / std::sqrt(static_cast<double>(n)));
  rep.median_ratio_4x = median(lam_n) / std::max(median(lam_q), 1.0);

  const UnstableSet u = unstable_colors(p);
  const GammaEstimate gamma = estimate_gamma(p, u.alpha_r(), 2'000'000, 0, seed ^ 0x5eedull);
  rep.gamma_hat = std::sqrt(std::max(gamma.gamma2, 0.0));
  rep.gamma_ell = u.alpha_r();
  rep.gamma2 = gamma.gamma2;
  rep.gamma_std_error = gamma.std_error;
  rep.gamma_mean_increment = gamma.mean_increment;
  rep.gamma_steps = gamma.steps;

  if (rep.r == 1) {
    std::vector<double> ref = reflected_bm_max_samples(8000, 10'000, seed ^ 0xb10ull);
    for (double& x : ref) x *= rep.gamma_hat;
    rep.ks_vs_reflected = ks_statistic_two_sample(rep.scaled_lambda1, ref);
  }
  return rep;
}

std::string ScalingReport::to_json() const {
  json j;
  j["schema"] = kSchema;
  j["report"] = "scaling";
  j["model"] = model;
  j["seed"] = seed;
  j["stream_offset"] = stream_offset;
  j["trials"] = trials;
  j["k_max"] = k_max;
  j["n_list"] = n_list;
  if (!p.empty()) j["p"] = p;
  j["low_sample"] = low_sample;
  j["lambda_exponents"] = lambda_exponents;
  j["verify"] = {{"checked", verify_checked}, {"failed", verify_failed}};
  json rows = json::array();
  for (const auto& per_n : cells) {
    for (const auto& cell : per_n) {
      json c{{"n", cell.n}, {"k", cell.index}, {"lambda", summary_json(cell.lambda)}};
      if (cell.rho.count > 0) c["rho"] = summary_json(cell.rho);
      rows.push_back(std::move(c));
    }
  }
  j["cells"] = std::move(rows);
  return j.dump(2);
}

std::string ScalingReport::to_csv() const {
  std::ostringstream os;
  os << "model,n,k,stat,mean,stderr,median,q25,q75,count\n";
  auto line = [&](std::int64_t n, int k, const char* stat, const StatSummary& s) {
    os << model << ',' << n << ',' << k << ',' << stat << ',' << s.mean << ',' << s.std_error
       << ',' << s.median << ',' << s.q25 << ',' << s.q75 << ',' << s.count << '\n';
  };
  for (const auto& per_n : cells) {
    for (const auto& cell : per_n) {
      if (cell.rho.count > 0) line(cell.n, cell.index, "rho", cell.rho);
      line(cell.n, cell.index, "lambda", cell.lambda);
    }
  }
  return os.str();
}

std::string NormalityReport::to_json() const {
  json j;
  j["schema"] = kSchema;
  j["report"] = "clt-supercritical";
  j["seed"] = seed;
  j["trials"] = trials;
  j["n"] = n;
  j["p"] = p;
  j["mean_lambda1_over_n"] = mean_lambda1_over_n;
  j["se_lambda1_over_n"] = se_lambda1_over_n;
  j["target_ratio"] = target_ratio;
  j["skewness"] = skewness;
  j["excess_kurtosis"] = excess_kurtosis;
  j["ks_vs_normal"] = ks_vs_normal;
  j["var_n"] = var_n;
  j["var_2n"] = var_2n;
  j["var_ratio"] = var_ratio;
  return j.dump(2);
}

std::string CriticalProfileReport::to_json() const {
  json j;
  j["schema"] = kSchema;
  j["report"] = "critical-profile";
  j["seed"] = seed;
  j["trials"] = trials;
  j["n"] = n;
  j["p"] = p;
  j["r"] = r;
  j["gamma_hat"] = gamma_hat;
  j["gamma"] = {{"p", p},
                {"ell", gamma_ell},
                {"steps", gamma_steps},
                {"seed", seed},
                {"mean_increment", gamma_mean_increment},
                {"gamma2", gamma2},
                {"stderr", gamma_std_error}};
  j["ks_vs_reflected"] = ks_vs_reflected;
  j["median_ratio_4x"] = median_ratio_4x;
  j["scaled_lambda1"] = scaled_lambda1;
  return j.dump(2);
}

}  // namespace bbs
