#include "config.hpp"

#include "errors.hpp"

namespace epirate {

using nlohmann::json;

namespace {

json parse_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad ") + what + " JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(std::string(what) + " config must be a JSON object");
  return j;
}

double require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  return v;
}

double require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw ConfigError(std::string(name) + " must be non-negative");
  return v;
}

}  // namespace

FitConfig parse_fit_config(const json& j) {
  FitConfig c;
  c.model = j.value("model", std::string("step-indep"));
  if (c.model != "step-indep" && c.model != "step-martingale" && c.model != "bspline" &&
      c.model != "mass-action")
    throw ConfigError("unknown model '" + c.model + "'");

  auto& s = c.settings;
  s.iterations = j.value("iterations", 10000LL);
  s.burn_in = j.value("burn_in", 0LL);
  s.thin = j.value("thin", 1LL);
  s.within_model_repeats = j.value("within_model_repeats", 1);
  s.infection_updates = j.value("infection_updates", 0);
  s.theta = j.value("theta", 0.0);
  s.seed = j.value("seed", 1ULL);
  s.emit_latents = j.value("emit_latents", true);
  if (s.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (s.burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (s.thin < 1) throw ConfigError("thin must be >= 1");
  if (s.within_model_repeats < 1) throw ConfigError("within_model_repeats must be >= 1");
  require_non_negative(s.theta, "theta");

  if (j.contains("gamma_prior")) {
    const json& g = j["gamma_prior"];
    s.kappa_gamma = require_positive(g.value("kappa", 1.0), "gamma_prior.kappa");
    s.mu_gamma = require_non_negative(g.value("mu", 0.0), "gamma_prior.mu");
  }

  auto& p = c.prior;
  if (j.contains("rate_prior")) {
    const json& r = j["rate_prior"];
    p.lambda = require_positive(r.value("lambda", 10.0), "rate_prior.lambda");
    p.k_max = r.value("k_max", 50);
    if (p.k_max < 0) throw ConfigError("rate_prior.k_max must be >= 0");
    p.kappa = require_positive(r.value("kappa", 1.0), "rate_prior.kappa");
    p.a = require_positive(r.value("a", 1.0), "rate_prior.a");
    p.b = require_non_negative(r.value("b", 0.0), "rate_prior.b");
    p.alpha0 = require_positive(r.value("alpha0", 1.0), "rate_prior.alpha0");
    p.beta0 = require_non_negative(r.value("beta0", 0.0), "rate_prior.beta0");
    p.alpha = require_positive(r.value("alpha", 1.0), "rate_prior.alpha");
  }
  p.variant =
      c.model == "step-martingale" ? HeightPrior::martingale : HeightPrior::independent;

  if (c.model == "mass-action") {
    if (!j.contains("population")) throw ConfigError("mass-action needs 'population'");
    c.mass_action.population = j["population"].get<long>();
    if (j.contains("beta_prior")) {
      const json& b = j["beta_prior"];
      c.mass_action.nu_beta = require_positive(b.value("nu", 1.0), "beta_prior.nu");
      c.mass_action.lambda_beta = require_non_negative(b.value("lambda", 0.0), "beta_prior.lambda");
    }
  }
  return c;
}

FitConfig parse_fit_config_string(const std::string& config_json) {
  return parse_fit_config(parse_object(config_json, "fit"));
}

namespace {

template <class RateT>
class RjRunner final : public SamplerRunner {
 public:
  RjRunner(const RemovalData& data, const FitConfig& c)
      : chain_(data, c.prior, c.settings), iterations_(c.settings.iterations) {}
  void run(const SampleSink& sink) override { chain_.run(sink); }
  long long iterations() const override { return iterations_; }

 private:
  RjChain<RateT> chain_;
  long long iterations_;
};

class MassActionRunner final : public SamplerRunner {
 public:
  MassActionRunner(const RemovalData& data, const FitConfig& c)
      : chain_(data, c.mass_action, c.settings), iterations_(c.settings.iterations) {}
  void run(const SampleSink& sink) override { chain_.run(sink); }
  long long iterations() const override { return iterations_; }

 private:
  MassActionChain chain_;
  long long iterations_;
};

}  // namespace

std::unique_ptr<SamplerRunner> make_sampler(const RemovalData& data,
                                            const FitConfig& config) {
  try {
    if (config.model == "bspline") return std::make_unique<RjRunner<SplineRate>>(data, config);
    if (config.model == "mass-action") return std::make_unique<MassActionRunner>(data, config);
    return std::make_unique<RjRunner<StepRate>>(data, config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SimConfig parse_sim_config(const json& j) {
  SimConfig c;
  c.population = j.value("population", 1000L);
  c.beta = j.value("beta", 1.7e-3);
  c.gamma = j.value("gamma", 1.0);
  c.seasonal = j.value("seasonal", false);
  c.seed = j.value("seed", 1ULL);
  c.min_final_size = j.value("min_final_size", 0L);
  if (c.population < 1) throw ConfigError("population must be >= 1");
  if (!(c.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  require_positive(c.gamma, "gamma");
  if (c.min_final_size > c.population + 1)
    throw ConfigError("min_final_size cannot exceed population + 1");
  return c;
}

SimConfig parse_sim_config_string(const std::string& config_json) {
  return parse_sim_config(parse_object(config_json, "simulate"));
}

SummarizeOptions parse_summarize_options_string(const std::string& options_json) {
  const json j = parse_object(options_json.empty() ? "{}" : options_json, "summarize");
  SummarizeOptions o;
  o.grid_points = j.value("grid", 512);
  o.per_infective = j.value("per_infective", false);
  o.burn_in_samples = j.value("burn_in_samples", 0L);
  o.thin = j.value("thin", 1L);
  if (o.grid_points < 2) throw ConfigError("grid must be >= 2");
  if (o.burn_in_samples < 0) throw ConfigError("burn_in_samples must be >= 0");
  if (o.thin < 1) throw ConfigError("thin must be >= 1");
  return o;
}

}  // namespace epirate
