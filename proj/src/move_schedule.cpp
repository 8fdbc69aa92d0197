#include "move_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stats.hpp"

namespace epirate {

MoveSchedule::MoveSchedule(double lambda, int k_max) {
  log_pmf_ = stats::truncated_poisson_log_pmf(lambda, k_max);
  const std::size_t m = log_pmf_.size();
  b_.assign(m, 0.0);
  d_.assign(m, 0.0);
  // unscaled proposal weights; the pmf ratio is lambda/(k+1)
  for (int k = 0; k < static_cast<int>(m) - 1; ++k)
    b_[k] = std::min(1.0, std::exp(log_pmf_[k + 1] - log_pmf_[k]));
  for (int k = 1; k < static_cast<int>(m); ++k)
    d_[k] = std::min(1.0, std::exp(log_pmf_[k - 1] - log_pmf_[k]));
  double max_sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) max_sum = std::max(max_sum, b_[k] + d_[k]);
  if (!(max_sum > 0.0)) throw std::logic_error("MoveSchedule: degenerate schedule");
  c_ = 0.9 / max_sum;
  for (std::size_t k = 0; k < m; ++k) {
    b_[k] *= c_;
    d_[k] *= c_;
  }
}

double MoveSchedule::log_pmf_step_up(int k) const {
  if (k + 1 >= static_cast<int>(log_pmf_.size()))
    return -std::numeric_limits<double>::infinity();
  return log_pmf_[k + 1] - log_pmf_[k];
}

}  // namespace epirate
