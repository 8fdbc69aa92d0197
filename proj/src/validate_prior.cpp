#include "validate_prior.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "rj_chain.hpp"

namespace epirate {

using nlohmann::json;

PriorValidationConfig parse_prior_validation_config(const std::string& config_json) {
  json j;
  try {
    j = json::parse(config_json.empty() ? "{}" : config_json);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad validate-prior JSON: ") + e.what());
  }
  PriorValidationConfig c;
  c.family = j.value("family", std::string("step"));
  if (c.family != "step" && c.family != "bspline")
    throw ConfigError("validate-prior family must be 'step' or 'bspline'");
  c.lambda = j.value("lambda", 10.0);
  c.k_max = j.value("k_max", 50);
  c.kappa = j.value("kappa", 1.0);
  c.mu = j.value("mu", 1.0);
  c.iterations = j.value("iterations", 100000LL);
  c.seed = j.value("seed", 1ULL);
  c.tv_threshold = j.value("tv_threshold", 0.05);
  c.ks_p_threshold = j.value("ks_p_threshold", 0.01);
  c.thin_gap = j.value("thin_gap", 20);
  c.max_conditional = j.value("max_conditional", 2000);
  if (!(c.lambda > 0.0) || c.k_max < 1 || !(c.kappa > 0.0) || !(c.mu > 0.0) ||
      c.iterations < 1)
    throw ConfigError("validate-prior: bad parameter values");
  return c;
}

json PriorValidationReport::to_json() const {
  json j;
  j["k_mode"] = k_mode;
  j["tv_k"] = tv_k;
  j["ks_s1"] = {{"statistic", ks_s1.statistic},
                {"p_value", ks_s1.p_value},
                {"n_chain", ks_s1.n1},
                {"n_forward", ks_s1.n2}};
  j["ks_h0"] = {{"statistic", ks_h0.statistic},
                {"p_value", ks_h0.p_value},
                {"n_chain", ks_h0.n1},
                {"n_forward", ks_h0.n2}};
  j["iterations"] = iterations;
  j["pass"] = pass;
  return j;
}

namespace {

struct ConditionalDraws {
  std::vector<double> k_counts;  // histogram over 0..k_max, normalized
  std::vector<double> s1;        // first position | k == mode
  std::vector<double> h0;        // first value | k == mode
};

template <class ChainT>
ConditionalDraws run_prior_chain(const PriorValidationConfig& cfg, int mode) {
  RatePrior prior;
  prior.lambda = cfg.lambda;
  prior.k_max = cfg.k_max;
  prior.kappa = cfg.kappa;
  ChainT chain(prior, 0.0, 1.0, cfg.mu, cfg.seed);
  ConditionalDraws out;
  std::vector<long long> hist(static_cast<std::size_t>(cfg.k_max) + 1, 0);
  long long last_kept = -cfg.thin_gap;
  for (long long i = 0; i < cfg.iterations; ++i) {
    chain.iterate();
    const auto& r = chain.rate();
    const int k = r.k();
    ++hist[k];
    if (k == mode && k >= 1 && i - last_kept >= cfg.thin_gap &&
        static_cast<int>(out.s1.size()) < cfg.max_conditional) {
      last_kept = i;
      if constexpr (std::is_same_v<ChainT, StepChain>) {
        out.s1.push_back(r.changepoints().front());
        out.h0.push_back(r.heights().front());
      } else {
        out.s1.push_back(r.interior_knots().front());
        out.h0.push_back(r.free_coeffs().front());
      }
    }
  }
  out.k_counts.resize(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i)
    out.k_counts[i] = static_cast<double>(hist[i]) / static_cast<double>(cfg.iterations);
  return out;
}

ConditionalDraws run_forward(const PriorValidationConfig& cfg, int mode) {
  RatePrior prior;
  prior.lambda = cfg.lambda;
  prior.k_max = cfg.k_max;
  prior.kappa = cfg.kappa;
  Rng rng(cfg.seed + 0x51ed2701ULL);
  ConditionalDraws out;
  std::vector<long long> hist(static_cast<std::size_t>(cfg.k_max) + 1, 0);
  for (long long i = 0; i < cfg.iterations; ++i) {
    const StepRate draw = sample_step_prior(prior, 0.0, 1.0, cfg.mu, rng);
    ++hist[draw.k()];
    if (draw.k() == mode && draw.k() >= 1 &&
        static_cast<int>(out.s1.size()) < cfg.max_conditional) {
      out.s1.push_back(draw.changepoints().front());
      out.h0.push_back(draw.heights().front());
    }
  }
  out.k_counts.resize(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i)
    out.k_counts[i] = static_cast<double>(hist[i]) / static_cast<double>(cfg.iterations);
  return out;
}

}  // namespace

PriorValidationReport validate_prior(const PriorValidationConfig& cfg) {
  const auto log_pmf = stats::truncated_poisson_log_pmf(cfg.lambda, cfg.k_max);
  const int mode = stats::pmf_mode(log_pmf);

  const ConditionalDraws chain = cfg.family == "bspline"
                                     ? run_prior_chain<SplineChain>(cfg, mode)
                                     : run_prior_chain<StepChain>(cfg, mode);
  const ConditionalDraws forward = run_forward(cfg, mode);

  PriorValidationReport rep;
  rep.k_mode = mode;
  rep.iterations = cfg.iterations;
  rep.tv_k = stats::total_variation(chain.k_counts, forward.k_counts);
  if (!chain.s1.empty() && !forward.s1.empty()) {
    rep.ks_s1 = stats::ks_two_sample(chain.s1, forward.s1);
    rep.ks_h0 = stats::ks_two_sample(chain.h0, forward.h0);
  }
  rep.pass = rep.tv_k < cfg.tv_threshold && rep.ks_s1.p_value > cfg.ks_p_threshold &&
             rep.ks_h0.p_value > cfg.ks_p_threshold;
  return rep;
}

}  // namespace epirate
