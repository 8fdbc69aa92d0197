#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "mass_action.hpp"
#include "rj_chain.hpp"
#include "simulator.hpp"

namespace epirate {

// polymorphic front over the three chain types
class SamplerRunner {
 public:
  virtual ~SamplerRunner() = default;
  virtual void run(const SampleSink& sink) = 0;
  virtual long long iterations() const = 0;
};

struct FitConfig {
  std::string model;  // step-indep | step-martingale | bspline | mass-action
  SamplerSettings settings;
  RatePrior prior;
  MassActionConfig mass_action;
};

FitConfig parse_fit_config(const nlohmann::json& j);
FitConfig parse_fit_config_string(const std::string& config_json);

std::unique_ptr<SamplerRunner> make_sampler(const RemovalData& data,
                                            const FitConfig& config);

SimConfig parse_sim_config(const nlohmann::json& j);
SimConfig parse_sim_config_string(const std::string& config_json);

struct SummarizeOptions {
  int grid_points = 512;
  bool per_infective = false;
  long burn_in_samples = 0;
  long thin = 1;
};

SummarizeOptions parse_summarize_options_string(const std::string& options_json);

}  // namespace epirate
