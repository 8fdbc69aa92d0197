#include "latents.hpp"

#include <algorithm>
#include <stdexcept>

namespace epirate {

bool chi_valid(const Latents& inf, const RemovalData& rem) {
  if (inf.n() != rem.n()) throw std::invalid_argument("chi: infection/removal length mismatch");
  std::vector<double> s = inf.infection;
  std::sort(s.begin(), s.end());
  return chi_valid_sorted(s, rem.times());
}

bool chi_valid_sorted(std::span<const double> inf_sorted, std::span<const double> rem_sorted) {
  const std::size_t n = inf_sorted.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (inf_sorted[i + 1] > rem_sorted[i]) return false;
  return true;
}

bool chi_valid_after_move(std::span<const double> inf_sorted,
                          std::span<const double> rem_sorted, double old_t, double new_t) {
  // moving a time earlier can only relax the constraints
  if (new_t <= old_t) return true;
  const std::size_t n = inf_sorted.size();
  const auto pos_old = static_cast<std::size_t>(
      std::lower_bound(inf_sorted.begin(), inf_sorted.end(), old_t) - inf_sorted.begin());
  const auto r = static_cast<std::size_t>(
      std::upper_bound(inf_sorted.begin(), inf_sorted.end(), new_t) - inf_sorted.begin());
  const std::size_t pos_new = r - 1;  // old_t drops out below new_t
  const std::size_t i_lo = pos_old > 0 ? pos_old - 1 : 0;
  for (std::size_t i = i_lo; i + 1 < n && i + 1 <= pos_new; ++i) {
    const double v = (i + 1 < pos_new) ? inf_sorted[i + 2] : new_t;
    if (v > rem_sorted[i]) return false;
  }
  return true;
}

}  // namespace epirate
