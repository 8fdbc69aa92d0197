#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace epirate::stats {

// log Gamma(shape, rate) density at x > 0. rate == 0 is accepted and treated
// as the improper limiting kernel x^(shape-1).
double log_gamma_pdf(double x, double shape, double rate);

// regularized lower incomplete gamma, i.e. the Gamma(shape, rate) CDF
double gamma_cdf(double x, double shape, double rate);

// log pmf of Poisson(lambda) conditioned on k <= k_max, for k = 0..k_max
std::vector<double> truncated_poisson_log_pmf(double lambda, int k_max);

// argmax of the log pmf; ties resolved toward the larger k
int pmf_mode(std::span<const double> log_pmf);

// 0.5 * sum |p_i - q_i| over a shared support
double total_variation(std::span<const double> p, std::span<const double> q);

// empirical quantile with the inclusive linear-interpolation rule
// (R type 7); `sorted` must be ascending and non-empty
double quantile_sorted(std::span<const double> sorted, double p);

// survival function of the Kolmogorov distribution, Q(x) = 2*sum (-1)^{j-1} exp(-2 j^2 x^2)
double kolmogorov_sf(double x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0, n2 = 0;
};

// two-sample Kolmogorov-Smirnov test with the asymptotic p-value
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

// one-sample test against a CDF
KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace epirate::stats
