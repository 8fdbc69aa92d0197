#pragma once

#include <span>

#include "rate_prior.hpp"

namespace epirate {

// Deterministic cores of the reversible-jump moves, shared by the step and
// spline samplers (the spline relabels coefficients for heights and knots for
// changepoints). All ratios are returned in log space.

struct ValueSplit {
  double left = 0.0, right = 0.0;
};

// Split one segment value v into (left, right) such that the length-weighted
// geometric mean is preserved,
//   len_l*log(left) + len_r*log(right) = (len_l+len_r)*log(v),
// and right/left = (1-u)/u for u in (0,1).
ValueSplit split_value(double v, double len_left, double len_right, double u);

// inverse of split_value: length-weighted geometric mean of the pair
double merge_value(double v_left, double v_right, double len_left, double len_right);

// u that split_value would have used to produce (v_left, v_right)
double split_u_for_pair(double v_left, double v_right);

// Prior ratio contribution of k and the positions for a birth splitting a
// segment of length gap_left+gap_right at a point with those gaps;
// log_pmf_step_up = log p(k+1) - log p(k).
double birth_log_positions_prior_ratio(double log_pmf_step_up, int k, double support_len,
                                       double gap_left, double gap_right);

// value-prior ratio of a birth under independent Gamma(kappa, mu) values
double birth_log_values_prior_ratio_independent(double v_old, double v_left, double v_right,
                                                double kappa, double mu);

// value-prior ratio of a birth under the martingale prior; `values` is the
// pre-birth vector, j the split segment
double birth_log_values_prior_ratio_martingale(std::span<const double> values, int j,
                                               double v_left, double v_right,
                                               const RatePrior& prior);

// d_{k+1} * T / (b_k * (k+1))
double birth_log_proposal_ratio(double b_k, double d_k_plus_1, int k, double support_len);

// (v_left + v_right)^2 / v_old
double birth_log_jacobian(double v_old, double v_left, double v_right);

// spacing ratio for relocating a position from s_old to s_new within
// (lo, hi); -inf when s_new hits an endpoint
double move_position_log_prior_ratio(double lo, double s_old, double s_new, double hi);

// value-change ratios; both include the log-uniform proposal correction
double change_value_log_ratio_independent(double v_old, double v_new, double kappa,
                                          double mu);
double change_value_log_ratio_martingale(std::span<const double> values, int j,
                                         double v_new, const RatePrior& prior);

}  // namespace epirate
