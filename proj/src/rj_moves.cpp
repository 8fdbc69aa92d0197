#include "rj_moves.hpp"

#include <cmath>
#include <stdexcept>

namespace epirate {

ValueSplit split_value(double v, double len_left, double len_right, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("split_value: u must be in (0,1)");
  if (!(len_left > 0.0 && len_right > 0.0))
    throw std::invalid_argument("split_value: lengths must be positive");
  const double log_r = std::log1p(-u) - std::log(u);  // log((1-u)/u)
  const double len = len_left + len_right;
  const double log_v = std::log(v);
  return {std::exp(log_v - len_right / len * log_r),
          std::exp(log_v + len_left / len * log_r)};
}

double merge_value(double v_left, double v_right, double len_left, double len_right) {
  return std::exp((len_left * std::log(v_left) + len_right * std::log(v_right)) /
                  (len_left + len_right));
}

double split_u_for_pair(double v_left, double v_right) {
  // right/left = (1-u)/u  =>  u = left/(left+right)
  return v_left / (v_left + v_right);
}

double birth_log_positions_prior_ratio(double log_pmf_step_up, int k, double support_len,
                                       double gap_left, double gap_right) {
  return log_pmf_step_up + std::log(2.0 * (k + 1.0) * (2.0 * k + 3.0)) -
         2.0 * std::log(support_len) + std::log(gap_left) + std::log(gap_right) -
         std::log(gap_left + gap_right);
}

double birth_log_values_prior_ratio_independent(double v_old, double v_left, double v_right,
                                                double kappa, double mu) {
  return kappa * std::log(mu) - std::lgamma(kappa) +
         (kappa - 1.0) * (std::log(v_left) + std::log(v_right) - std::log(v_old)) -
         mu * (v_left + v_right - v_old);
}

double birth_log_values_prior_ratio_martingale(std::span<const double> values, int j,
                                               double v_left, double v_right,
                                               const RatePrior& prior) {
  const int k = static_cast<int>(values.size()) - 1;
  const double v_old = values[j];
  const double alpha_j = (j == 0) ? prior.alpha0 : prior.alpha;
  const double beta_j = (j == 0) ? prior.beta0 : prior.alpha / values[j - 1];
  double lr = prior.alpha * std::log(prior.alpha) - std::lgamma(prior.alpha) -
              beta_j * (v_left - v_old);
  if (j < k) {
    const double v_next = values[j + 1];
    lr += (alpha_j - 1.0 - prior.alpha) * (std::log(v_left) - std::log(v_old));
    lr -= std::log(v_right);
    lr -= prior.alpha * (v_right / v_left + v_next / v_right - v_next / v_old);
  } else {
    lr += (alpha_j - 1.0 - prior.alpha) * std::log(v_left) +
          (prior.alpha - 1.0) * std::log(v_right) - (alpha_j - 1.0) * std::log(v_old);
    lr -= prior.alpha * (v_right / v_left);
  }
  return lr;
}

double birth_log_proposal_ratio(double b_k, double d_k_plus_1, int k, double support_len) {
  return std::log(d_k_plus_1) + std::log(support_len) - std::log(b_k) -
         std::log(k + 1.0);
}

double birth_log_jacobian(double v_old, double v_left, double v_right) {
  return 2.0 * std::log(v_left + v_right) - std::log(v_old);
}

double move_position_log_prior_ratio(double lo, double s_old, double s_new, double hi) {
  return std::log(hi - s_new) + std::log(s_new - lo) - std::log(hi - s_old) -
         std::log(s_old - lo);
}

double change_value_log_ratio_independent(double v_old, double v_new, double kappa,
                                          double mu) {
  return kappa * (std::log(v_new) - std::log(v_old)) - mu * (v_new - v_old);
}

double change_value_log_ratio_martingale(std::span<const double> values, int j,
                                         double v_new, const RatePrior& prior) {
  const int k = static_cast<int>(values.size()) - 1;
  const double v_old = values[j];
  const double alpha_j = (j == 0) ? prior.alpha0 : prior.alpha;
  const double beta_j = (j == 0) ? prior.beta0 : prior.alpha / values[j - 1];
  if (j < k) {
    return (alpha_j - prior.alpha) * (std::log(v_new) - std::log(v_old)) -
           beta_j * (v_new - v_old) -
           prior.alpha * values[j + 1] * (1.0 / v_new - 1.0 / v_old);
  }
  return alpha_j * (std::log(v_new) - std::log(v_old)) - beta_j * (v_new - v_old);
}

}  // namespace epirate
