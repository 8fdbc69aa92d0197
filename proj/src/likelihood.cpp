#include "likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace epirate {

double log_likelihood(const Latents& inf, const RemovalData& rem, const RateFunction& rate,
                      double gamma) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("log_likelihood: gamma must be positive and finite");
  if (inf.n() != rem.n()) throw std::invalid_argument("log_likelihood: length mismatch");

  const int n = inf.n();
  const double t0 = inf.first_infection();
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(inf.infection[i]))
      throw std::invalid_argument("log_likelihood: non-finite infection time");
    if (!(inf.infection[i] < rem[i])) return neg_inf;  // infectious periods must be positive
    if (i != inf.omega && !(inf.infection[i] > t0))
      return neg_inf;  // omega must hold the strict minimum
  }
  if (!chi_valid(inf, rem)) return neg_inf;

  double ll = n * std::log(gamma);
  double sum_periods = 0.0;
  for (int i = 0; i < n; ++i) sum_periods += rem[i] - inf.infection[i];
  ll -= gamma * sum_periods;

  for (int i = 0; i < n; ++i) {
    if (i == inf.omega) continue;
    const double h = rate.left_limit(inf.infection[i]);
    if (!(h > 0.0)) return neg_inf;
    ll += std::log(h);
  }
  ll -= rate.integral();
  return ll;
}

}  // namespace epirate
