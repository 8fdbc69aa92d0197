#pragma once

#include <span>
#include <vector>

namespace epirate {

// Birth/death selection probabilities per model dimension k:
//   b_k = c min{1, p(k+1)/p(k)},  d_{k+1} = c min{1, p(k)/p(k+1)}
// with p the truncated-Poisson pmf and c set so that max_k (b_k + d_k) = 0.9.
class MoveSchedule {
 public:
  MoveSchedule(double lambda, int k_max);

  double birth(int k) const { return b_[k]; }
  double death(int k) const { return d_[k]; }
  double c() const { return c_; }
  int k_max() const { return static_cast<int>(b_.size()) - 1; }

  std::span<const double> log_pmf() const { return log_pmf_; }
  // log p(k+1) - log p(k); -inf at the truncation boundary
  double log_pmf_step_up(int k) const;

 private:
  std::vector<double> b_, d_, log_pmf_;
  double c_ = 0.0;
};

}  // namespace epirate
