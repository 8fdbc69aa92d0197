#pragma once

#include <string>
#include <vector>

namespace epirate {

// Observed removal times, sorted ascending and normalized so the first
// removal is at time 0. The i-th removal pairs with the i-th latent
// infection time.
class RemovalData {
 public:
  // sorts and (by default) shifts so removals.front() == 0
  static RemovalData from_times(std::vector<double> times, bool normalize = true);

  // single-column CSV, one time per row, optional header line
  static RemovalData load_csv(const std::string& path);

  int n() const { return static_cast<int>(removals_.size()); }
  double operator[](int i) const { return removals_[i]; }
  const std::vector<double>& times() const { return removals_; }
  double last() const { return removals_.back(); }

 private:
  std::vector<double> removals_;
};

}  // namespace epirate
