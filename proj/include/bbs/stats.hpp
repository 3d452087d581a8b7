#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace bbs {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double std_error_of_mean(const std::vector<double>& xs);
/// Linear-interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> xs, double q);
double median(std::vector<double> xs);
double skewness(const std::vector<double>& xs);
double excess_kurtosis(const std::vector<double>& xs);

double normal_cdf(double x);

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic_two_sample(std::vector<double> xs, std::vector<double> ys);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_std_error = 0.0;
};
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Standard error of the mean of a correlated series via batch means.
double batch_means_std_error(const std::vector<double>& xs, std::int64_t batches);

/// Regularized upper incomplete gamma Q(a, x) (chi-square survival is
/// Q(df/2, stat/2)).
double gamma_q(double a, double x);
double chi_square_p_value(double stat, double df);

/// log C(n, k)
double log_binom(std::int64_t n, std::int64_t k);

}  // namespace bbs
