#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace epirate::stats {

double log_gamma_pdf(double x, double shape, double rate) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  if (!(shape > 0.0) || rate < 0.0)
    throw std::invalid_argument("log_gamma_pdf: bad shape/rate");
  if (rate == 0.0) return (shape - 1.0) * std::log(x);  // improper kernel
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) -
         rate * x;
}

double gamma_cdf(double x, double shape, double rate) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, rate * x);
}

std::vector<double> truncated_poisson_log_pmf(double lambda, int k_max) {
  if (!(lambda > 0.0) || k_max < 0)
    throw std::invalid_argument("truncated_poisson_log_pmf: bad parameters");
  std::vector<double> lp(static_cast<std::size_t>(k_max) + 1);
  const double ll = std::log(lambda);
  for (int k = 0; k <= k_max; ++k)
    lp[k] = k * ll - std::lgamma(static_cast<double>(k) + 1.0);
  const double m = *std::max_element(lp.begin(), lp.end());
  double sum = 0.0;
  for (double v : lp) sum += std::exp(v - m);
  const double log_norm = m + std::log(sum);
  for (double& v : lp) v -= log_norm;
  return lp;
}

int pmf_mode(std::span<const double> log_pmf) {
  int mode = 0;
  for (int k = 1; k < static_cast<int>(log_pmf.size()); ++k)
    if (log_pmf[k] >= log_pmf[mode]) mode = k;
  return mode;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    s += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * s));
}

namespace {

// Stephens' small-sample correction for the asymptotic KS p-value
double ks_p_value(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const std::size_t n1 = x.size(), n2 = y.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < n1 && j < n2) {
    const double t = std::min(x[i], y[j]);
    while (i < n1 && x[i] <= t) ++i;
    while (j < n2 && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double n_eff =
      static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(n1 + n2);
  return {d, ks_p_value(d, n_eff), n1, n2};
}

KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(x[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return {d, ks_p_value(d, static_cast<double>(n)), n, 0};
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_correlation: bad inputs");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace epirate::stats
