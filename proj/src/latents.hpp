#pragma once

#include <span>
#include <vector>

#include "removal_data.hpp"

namespace epirate {

// Latent infection configuration: infection[i] pairs with the i-th removal,
// omega labels the initial infective (the one holding the minimum time).
struct Latents {
  std::vector<double> infection;
  int omega = 0;

  double first_infection() const { return infection[omega]; }
  int n() const { return static_cast<int>(infection.size()); }
};

// Validity indicator: the ordered infection times I_(i+1) must not exceed the
// ordered removal times R_(i), so at least one infective is present
// throughout the epidemic.
bool chi_valid(const Latents& inf, const RemovalData& rem);

// same check when the infection times are already sorted ascending
bool chi_valid_sorted(std::span<const double> inf_sorted, std::span<const double> rem_sorted);

// incremental variant: `inf_sorted` currently satisfies chi; would it still
// hold after moving one infection time from old_t to new_t?
bool chi_valid_after_move(std::span<const double> inf_sorted,
                          std::span<const double> rem_sorted, double old_t, double new_t);

}  // namespace epirate
