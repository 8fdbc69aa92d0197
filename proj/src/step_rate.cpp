#include "step_rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stats.hpp"

namespace epirate {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

StepRate::StepRate(double begin, double end, std::vector<double> changepoints,
                   std::vector<double> heights)
    : begin_(begin), end_(end), changepoints_(std::move(changepoints)),
      heights_(std::move(heights)) {
  if (!(begin_ < end_)) throw std::invalid_argument("StepRate: empty support");
  if (heights_.size() != changepoints_.size() + 1)
    throw std::invalid_argument("StepRate: need k+1 heights for k changepoints");
  double prev = begin_;
  for (double s : changepoints_) {
    if (!(s > prev) || !(s < end_))
      throw std::invalid_argument("StepRate: changepoints must be strictly increasing inside the support");
    prev = s;
  }
  for (double h : heights_)
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("StepRate: heights must be positive and finite");
}

double StepRate::boundary(int j) const {
  if (j <= 0) return begin_;
  if (j > k()) return end_;
  return changepoints_[j - 1];
}

double StepRate::value(double t) const {
  if (t < begin_ || t > end_) throw std::out_of_range("StepRate::value: t outside support");
  const auto idx = std::upper_bound(changepoints_.begin(), changepoints_.end(), t) -
                   changepoints_.begin();
  return heights_[static_cast<std::size_t>(idx)];
}

double StepRate::left_limit(double t) const {
  if (t <= begin_ || t > end_)
    throw std::out_of_range("StepRate::left_limit: t outside (begin, end]");
  const auto idx = std::lower_bound(changepoints_.begin(), changepoints_.end(), t) -
                   changepoints_.begin();
  return heights_[static_cast<std::size_t>(idx)];
}

double StepRate::integral() const {
  double s = 0.0;
  for (int j = 0; j <= k(); ++j) s += heights_[j] * (boundary(j + 1) - boundary(j));
  return s;
}

StepRate StepRate::with_support_begin(double new_begin) const {
  return StepRate(new_begin, end_, changepoints_, heights_);
}

double segment_count_and_positions_log_prior(std::span<const double> positions,
                                             double begin, double end,
                                             const RatePrior& prior) {
  const int k = static_cast<int>(positions.size());
  if (k > prior.k_max) return kNegInf;
  const auto log_pmf = stats::truncated_poisson_log_pmf(prior.lambda, prior.k_max);
  double lp = log_pmf[k];
  // even-numbered order statistics of 2k+1 uniforms:
  // (2k+1)! / T^(2k+1) * prod of the k+1 gaps
  const double T = end - begin;
  lp += std::lgamma(2.0 * k + 2.0) - (2.0 * k + 1.0) * std::log(T);
  double prev = begin;
  for (int j = 0; j < k; ++j) {
    lp += std::log(positions[j] - prev);
    prev = positions[j];
  }
  lp += std::log(end - prev);
  return lp;
}

double step_log_prior(const StepRate& rate, const RatePrior& prior, double mu) {
  double lp = segment_count_and_positions_log_prior(rate.changepoints(),
                                                    rate.support_begin(),
                                                    rate.support_end(), prior);
  if (lp == kNegInf) return kNegInf;
  const auto& h = rate.heights();
  if (prior.variant == HeightPrior::independent) {
    for (double v : h) lp += stats::log_gamma_pdf(v, prior.kappa, mu);
  } else {
    lp += stats::log_gamma_pdf(h[0], prior.alpha0, prior.beta0);
    for (std::size_t i = 1; i < h.size(); ++i)
      lp += stats::log_gamma_pdf(h[i], prior.alpha, prior.alpha / h[i - 1]);
  }
  return lp;
}

std::vector<double> sample_even_order_positions(int k, double begin, double end, Rng& rng) {
  if (k == 0) return {};
  std::vector<double> pts(static_cast<std::size_t>(2 * k + 1));
  for (double& p : pts) p = rng.uniform(begin, end);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out[j] = pts[2 * j + 1];  // positions 2,4,..,2k (1-based)
  return out;
}

StepRate sample_step_prior(const RatePrior& prior, double begin, double end, double mu,
                           Rng& rng) {
  const auto log_pmf = stats::truncated_poisson_log_pmf(prior.lambda, prior.k_max);
  const double u = rng.uniform();
  double acc = 0.0;
  int k = prior.k_max;
  for (int j = 0; j <= prior.k_max; ++j) {
    acc += std::exp(log_pmf[j]);
    if (u < acc) {
      k = j;
      break;
    }
  }
  auto s = sample_even_order_positions(k, begin, end, rng);
  std::vector<double> h(static_cast<std::size_t>(k) + 1);
  if (prior.variant == HeightPrior::independent) {
    for (double& v : h) v = rng.gamma(prior.kappa, mu);
  } else {
    if (!(prior.beta0 > 0.0))
      throw std::invalid_argument("sample_step_prior: martingale forward draw needs beta0 > 0");
    h[0] = rng.gamma(prior.alpha0, prior.beta0);
    for (std::size_t i = 1; i < h.size(); ++i)
      h[i] = rng.gamma(prior.alpha, prior.alpha / h[i - 1]);
  }
  return StepRate(begin, end, std::move(s), std::move(h));
}

}  // namespace epirate
