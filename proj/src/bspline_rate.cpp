#include "bspline_rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stats.hpp"
#include "step_rate.hpp"

namespace epirate {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double bspline_basis(std::span<const double> knots, int i, int order, double t) {
  const int n = static_cast<int>(knots.size());
  if (i < 0 || order < 0 || i + order + 1 >= n)
    throw std::out_of_range("bspline_basis: index out of range");
  if (order == 0) return (knots[i] <= t && t < knots[i + 1]) ? 1.0 : 0.0;
  double v = 0.0;
  const double d1 = knots[i + order] - knots[i];
  if (d1 > 0.0) v += (t - knots[i]) / d1 * bspline_basis(knots, i, order - 1, t);
  const double d2 = knots[i + order + 1] - knots[i + 1];
  if (d2 > 0.0) v += (knots[i + order + 1] - t) / d2 * bspline_basis(knots, i + 1, order - 1, t);
  return v;
}

SplineRate::SplineRate(double begin, double end, std::vector<double> interior_knots,
                       std::vector<double> free_coeffs)
    : begin_(begin), end_(end), interior_knots_(std::move(interior_knots)),
      free_coeffs_(std::move(free_coeffs)) {
  if (!(begin_ < end_)) throw std::invalid_argument("SplineRate: empty support");
  if (free_coeffs_.size() != interior_knots_.size() + 1)
    throw std::invalid_argument("SplineRate: need k+1 free coefficients for k interior knots");
  double prev = begin_;
  for (double t : interior_knots_) {
    if (!(t > prev) || !(t < end_))
      throw std::invalid_argument("SplineRate: interior knots must be strictly increasing inside the support");
    prev = t;
  }
  for (double c : free_coeffs_)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("SplineRate: coefficients must be non-negative and finite");
}

double SplineRate::knot(int i) const {
  if (i <= 2) return begin_;
  if (i >= k() + 3) return end_;
  return interior_knots_[i - 3];
}

double SplineRate::coeff(int i) const {
  if (i == 0 || i == k() + 2) return 0.0;
  return free_coeffs_[i - 1];
}

std::vector<double> SplineRate::full_knots() const {
  std::vector<double> kn(static_cast<std::size_t>(k()) + 6);
  for (int i = 0; i < k() + 6; ++i) kn[i] = knot(i);
  return kn;
}

double SplineRate::value(double t) const {
  if (t < begin_ || t > end_) throw std::out_of_range("SplineRate::value: t outside support");
  if (t == end_) return 0.0;  // left limit; last coefficient is pinned to zero
  // interval [t_j, t_{j+1}) with j = 2 + #. of interior knots <= t
  const int m = static_cast<int>(
      std::upper_bound(interior_knots_.begin(), interior_knots_.end(), t) -
      interior_knots_.begin());
  const int j = 2 + m;
  const double tj = knot(j), tj1 = knot(j + 1), tj2 = knot(j + 2), tjm1 = knot(j - 1);
  // per-interval quadratic expansion of the order-2 spline
  double v = (coeff(j) * (t - tj) * (t - tj) + coeff(j - 1) * (tj2 - t) * (t - tj)) /
             ((tj2 - tj) * (tj1 - tj));
  v += (coeff(j - 1) * (tj1 - t) * (t - tjm1) + coeff(j - 2) * (tj1 - t) * (tj1 - t)) /
       ((tj1 - tjm1) * (tj1 - tj));
  return v;
}

double SplineRate::value_by_basis(double t) const {
  if (t == end_) return 0.0;
  const auto kn = full_knots();
  double v = 0.0;
  for (int i = 0; i <= k() + 2; ++i) v += coeff(i) * bspline_basis(kn, i, 2, t);
  return v;
}

double SplineRate::integral() const {
  double s = 0.0;
  for (int i = 0; i <= k() + 2; ++i) s += coeff(i) * (knot(i + 3) - knot(i));
  return s / 3.0;
}

SplineRate SplineRate::with_support_begin(double new_begin) const {
  return SplineRate(new_begin, end_, interior_knots_, free_coeffs_);
}

double bspline_log_prior(double begin, double end, std::span<const double> interior_knots,
                         std::span<const double> free_coeffs, const RatePrior& prior,
                         double mu) {
  if (prior.variant != HeightPrior::independent)
    throw std::invalid_argument("bspline_log_prior: spline coefficients use the independent prior");
  double lp = segment_count_and_positions_log_prior(interior_knots, begin, end, prior);
  if (lp == kNegInf) return kNegInf;
  for (double c : free_coeffs) {
    if (!(c > 0.0)) return kNegInf;
    lp += stats::log_gamma_pdf(c, prior.kappa, mu);
  }
  return lp;
}

double bspline_log_prior(const SplineRate& rate, const RatePrior& prior, double mu) {
  return bspline_log_prior(rate.support_begin(), rate.support_end(),
                           rate.interior_knots(), rate.free_coeffs(), prior, mu);
}

SplineRate sample_spline_prior(const RatePrior& prior, double begin, double end, double mu,
                               Rng& rng) {
  StepRate draw = sample_step_prior(
      RatePrior{prior.lambda, prior.k_max, HeightPrior::independent, prior.kappa,
                prior.a, prior.b},
      begin, end, mu, rng);
  return SplineRate(begin, end, draw.changepoints(), draw.heights());
}

}  // namespace epirate
