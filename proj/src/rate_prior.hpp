#pragma once

namespace epirate {

enum class HeightPrior { independent, martingale };

// Prior for a segmented rate model. The number of segments k is truncated
// Poisson(lambda), segment positions follow the even-numbered order
// statistics of 2k+1 uniforms on the support, and the k+1 free values
// (step heights, or interior spline coefficients) are either independent
// Gamma(kappa, mu) with mu ~ Gamma(a, b), or a Gamma martingale chain with
// E[h_i | h_{i-1}] = h_{i-1}. The martingale variant applies to step rates
// only.
struct RatePrior {
  double lambda = 10.0;
  int k_max = 50;

  HeightPrior variant = HeightPrior::independent;

  // independent variant; b == 0 gives the improper limiting hyperprior
  double kappa = 1.0;
  double a = 1.0;
  double b = 0.0;

  // martingale variant; beta0 == 0 gives a flat kernel on h_0
  double alpha0 = 1.0;
  double beta0 = 0.0;
  double alpha = 1.0;
};

}  // namespace epirate
