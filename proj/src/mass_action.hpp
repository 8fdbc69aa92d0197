#pragma once

#include <span>
#include <vector>

#include "latents.hpp"
#include "posterior_sample.hpp"
#include "rate_function.hpp"
#include "removal_data.hpp"
#include "rj_chain.hpp"
#include "rng.hpp"

namespace epirate {

// Trajectory terms for the mass-action likelihood. X(t-) counts susceptibles
// (the initial infective never was one), Y(t-) counts infectives.
struct XyTerms {
  double integral = 0.0;     // integral of X_t Y_t dt over the window
  double log_product = 0.0;  // sum of log(X^- Y^-) at infection events past the first
  bool valid = true;         // false when the trajectory strands (chi violated)
};

// Walk the piecewise-constant trajectory over [lo, hi], both times included.
// `inf_sorted` and `rem_sorted` are the full event arrays; susceptibles start
// at `population`.
XyTerms xy_walk(std::span<const double> inf_sorted, std::span<const double> rem_sorted,
                long population, double lo, double hi);

// whole-epidemic terms, from the first infection to the last removal
XyTerms xy_terms(std::span<const double> inf_sorted, std::span<const double> rem_sorted,
                 long population);

// relocate one entry of a sorted vector, shifting only the span in between
void move_sorted_element(std::vector<double>& v, double old_t, double new_t);

struct MassActionConfig {
  long population = 0;     // initial susceptibles; must be >= n
  double nu_beta = 1.0;    // Gamma shape of the beta prior
  double lambda_beta = 0;  // Gamma rate; 0 = improper kernel
};

// Parametric baseline: h(t) = beta * X_t * Y_t with conjugate Gibbs draws for
// beta and gamma and Metropolis-Hastings latent updates. Latent moves must
// rebuild the local trajectory, which is what makes this sampler the slow one.
class MassActionChain {
 public:
  MassActionChain(RemovalData data, MassActionConfig ma, SamplerSettings cfg);
  MassActionChain(RemovalData data, MassActionConfig ma, SamplerSettings cfg,
                  Latents latents, double beta, double gamma);

  void run(const SampleSink& sink);
  void iterate();
  PosteriorSample make_sample() const;

  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const Latents& latents() const { return latents_; }
  long long iteration() const { return iter_; }
  double integral_xy() const { return integral_xy_; }
  double cached_log_likelihood() const;
  double recomputed_log_likelihood() const;
  double max_consistency_drift() const { return max_drift_; }

  void gibbs_gamma();
  void gibbs_beta();
  void attempt_infection_update();
  void attempt_first_infection();  // exact conditional draw
  void attempt_omega_swap();

 private:
  void refresh_caches(bool record_drift);

  RemovalData data_;
  MassActionConfig ma_;
  SamplerSettings cfg_;
  int n_ = 0;

  Rng rng_;
  Latents latents_;
  double beta_ = 1.0, gamma_ = 1.0;

  std::vector<double> sorted_inf_;
  double sum_periods_ = 0.0;
  double integral_xy_ = 0.0;
  double log_product_xy_ = 0.0;

  long long iter_ = 0;
  double max_drift_ = 0.0;
};

}  // namespace epirate
