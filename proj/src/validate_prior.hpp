#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "stats.hpp"

namespace epirate {

// Prior-recovery check: runs the reversible-jump machinery with the
// likelihood switched off and compares it against direct forward draws from
// the prior. Exercises the full birth/death acceptance arithmetic (prior
// ratio, proposal ratio, Jacobian): any error there shifts the stationary
// distribution away from the prior.
struct PriorValidationConfig {
  std::string family = "step";  // step | bspline
  double lambda = 10.0;
  int k_max = 50;
  double kappa = 1.0;
  double mu = 1.0;  // held fixed on both routes
  long long iterations = 100000;
  std::uint64_t seed = 1;
  double tv_threshold = 0.05;
  double ks_p_threshold = 0.01;
  // conditional-sample collection
  int thin_gap = 20;
  int max_conditional = 2000;
};

struct PriorValidationReport {
  int k_mode = 0;
  double tv_k = 1.0;
  stats::KsResult ks_s1;
  stats::KsResult ks_h0;
  long long iterations = 0;
  bool pass = false;

  nlohmann::json to_json() const;
};

PriorValidationConfig parse_prior_validation_config(const std::string& config_json);
PriorValidationReport validate_prior(const PriorValidationConfig& cfg);

}  // namespace epirate
