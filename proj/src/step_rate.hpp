#pragma once

#include <span>
#include <vector>

#include "rate_function.hpp"
#include "rate_prior.hpp"
#include "rng.hpp"

namespace epirate {

// Piecewise-constant infection rate on [begin, end]: k changepoints strictly
// inside the support and k+1 positive heights, right-continuous on half-open
// intervals [s_j, s_{j+1}).
class StepRate final : public RateFunction {
 public:
  StepRate(double begin, double end, std::vector<double> changepoints,
           std::vector<double> heights);

  int k() const { return static_cast<int>(changepoints_.size()); }
  const std::vector<double>& changepoints() const { return changepoints_; }
  const std::vector<double>& heights() const { return heights_; }

  // s_0 = begin, s_{k+1} = end
  double boundary(int j) const;

  double value(double t) const override;       // value(end) = h_k
  double left_limit(double t) const override;  // at a changepoint, the interval to the left
  double integral() const override;
  double support_begin() const override { return begin_; }
  double support_end() const override { return end_; }

  StepRate with_support_begin(double new_begin) const;

 private:
  double begin_, end_;
  std::vector<double> changepoints_;
  std::vector<double> heights_;
};

// log joint prior density of (k, changepoints, heights) given mu; -inf when
// k exceeds the truncation
double step_log_prior(const StepRate& rate, const RatePrior& prior, double mu);

// shared with the spline model: even-numbered-order-statistics density of the
// interior positions, including the truncated-Poisson pmf of k
double segment_count_and_positions_log_prior(std::span<const double> positions,
                                             double begin, double end,
                                             const RatePrior& prior);

// forward draw from the prior with mu held fixed
StepRate sample_step_prior(const RatePrior& prior, double begin, double end, double mu,
                           Rng& rng);

// positions part only: even-numbered order statistics of 2k+1 uniforms
std::vector<double> sample_even_order_positions(int k, double begin, double end, Rng& rng);

}  // namespace epirate
