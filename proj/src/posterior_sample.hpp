#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace epirate {

struct StepRateSample {
  double begin = 0.0, end = 0.0;
  std::vector<double> changepoints;
  std::vector<double> heights;
};

struct SplineRateSample {
  double begin = 0.0, end = 0.0;
  std::vector<double> interior_knots;
  std::vector<double> coeffs;  // free coefficients P_2..P_{k+2}
};

struct MassActionRateSample {
  double beta = 0.0;
  long population = 0;  // needed to rebuild X_t when summarizing
};

using RateSample = std::variant<StepRateSample, SplineRateSample, MassActionRateSample>;

// One retained draw from a sampler. `infection` may be empty when latent
// emission is turned off; mass-action samplers always emit it since their
// rate curve is a function of the latent trajectory.
struct PosteriorSample {
  long long iter = 0;
  double gamma = 0.0;
  double mu = 0.0;
  bool has_mu = true;  // martingale and mass-action chains carry no mu
  double loglik = 0.0;
  int omega = 0;
  double first_infection = 0.0;
  std::vector<double> infection;
  RateSample rate;
};

// return false to stop the chain early
using SampleSink = std::function<bool(const PosteriorSample&)>;

}  // namespace epirate
