#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace epirate {

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
  return -std::log(uniform_open()) / rate;
}

double Rng::truncated_exponential(double rate, double upper) {
  if (!(rate > 0.0) || !(upper > 0.0))
    throw std::invalid_argument("truncated_exponential: rate and upper must be > 0");
  // inverse CDF on (0, upper); expm1/log1p keep precision when rate*upper is small
  const double z = std::expm1(-rate * upper);  // in (-1, 0)
  return -std::log1p(uniform_open() * z) / rate;
}

double Rng::normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * m;
  have_spare_normal_ = true;
  return u * m;
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("gamma: shape and rate must be > 0");
  if (shape < 1.0) {
    // boost to shape+1, then scale back (Marsaglia & Tsang, sec. 6)
    const double g = gamma(shape + 1.0, 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape) / rate;
  }
  // Marsaglia & Tsang squeeze method
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

}  // namespace epirate
