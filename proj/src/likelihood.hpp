#pragma once

#include "latents.hpp"
#include "rate_function.hpp"
#include "removal_data.hpp"

namespace epirate {

// Augmented log density of (infections, removals) given the rate function and
// the removal rate gamma, up to the model's constant of proportionality:
//
//   n log(gamma) + sum_{i != omega} log h(I_i^-)
//     - gamma * sum_i (R_i - I_i) - integral of h over [I_omega, R_n]
//
// Returns -inf when the configuration is invalid (chi fails, an infection
// falls outside (I_omega, R_n], or the rate vanishes at an infection time).
double log_likelihood(const Latents& inf, const RemovalData& rem, const RateFunction& rate,
                      double gamma);

}  // namespace epirate
