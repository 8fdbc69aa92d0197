#pragma once

#include <span>
#include <vector>

#include "rate_function.hpp"
#include "rate_prior.hpp"
#include "rng.hpp"

namespace epirate {

// Cox-de Boor recursion. Terms with a zero denominator (repeated knots)
// contribute 0. `i` indexes the basis function, `order` its polynomial order.
double bspline_basis(std::span<const double> knots, int i, int order, double t);

// Continuous piecewise-quadratic rate: a 2nd-order B-spline on [begin, end]
// with k strictly increasing interior knots, triple knots at both boundary
// points, and non-negative coefficients whose first and last entries are
// pinned to zero (the rate vanishes at both ends of the epidemic).
class SplineRate final : public RateFunction {
 public:
  // free_coeffs are P_2..P_{k+2}, i.e. everything except the two pinned zeros
  SplineRate(double begin, double end, std::vector<double> interior_knots,
             std::vector<double> free_coeffs);

  int k() const { return static_cast<int>(interior_knots_.size()); }
  const std::vector<double>& interior_knots() const { return interior_knots_; }
  const std::vector<double>& free_coeffs() const { return free_coeffs_; }

  // padded accessors: knot(i) for i in 0..k+5, coeff(i) for i in 0..k+2
  double knot(int i) const;
  double coeff(int i) const;
  std::vector<double> full_knots() const;

  double value(double t) const override;     // closed-form per-interval quadratic
  double value_by_basis(double t) const;     // basis-recursion route (slow; cross-check)
  double left_limit(double t) const override { return value(t); }  // continuous
  double integral() const override;
  double support_begin() const override { return begin_; }
  double support_end() const override { return end_; }

  SplineRate with_support_begin(double new_begin) const;

 private:
  double begin_, end_;
  std::vector<double> interior_knots_;
  std::vector<double> free_coeffs_;
};

// log joint prior of (k, interior knots, free coefficients) given mu;
// -inf when k > k_max or any coefficient is outside (0, inf)
double bspline_log_prior(double begin, double end, std::span<const double> interior_knots,
                         std::span<const double> free_coeffs, const RatePrior& prior,
                         double mu);
double bspline_log_prior(const SplineRate& rate, const RatePrior& prior, double mu);

SplineRate sample_spline_prior(const RatePrior& prior, double begin, double end, double mu,
                               Rng& rng);

}  // namespace epirate
