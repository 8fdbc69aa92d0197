#pragma once

#include <cstdint>
#include <random>

namespace epirate {

// Deterministic random source. All variate transforms are implemented here,
// on top of mt19937_64 raw bits, so that a stream depends only on
// (seed, call sequence) and not on the standard library's distribution
// internals, which differ between implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // (0, 1)
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // {0, .., n-1}, n >= 1
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  // Exp(rate), strictly positive
  double exponential(double rate);

  // Exp(rate) conditioned on (0, upper); endpoints excluded
  double truncated_exponential(double rate, double upper);

  double normal();

  // shape/rate parameterization, mean shape/rate
  double gamma(double shape, double rate);

 private:
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace epirate
