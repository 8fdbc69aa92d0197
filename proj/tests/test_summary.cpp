#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rng.hpp"
#include "summary.hpp"

using namespace epirate;

namespace {

PosteriorSample step_sample(double begin, double end, std::vector<double> s,
                            std::vector<double> h) {
  PosteriorSample p;
  p.first_infection = begin;
  p.rate = StepRateSample{begin, end, std::move(s), std::move(h)};
  return p;
}

}  // namespace

TEST_CASE("identical constant samples give flat equal bands") {
  std::vector<PosteriorSample> samples(25, step_sample(-1.0, 2.0, {}, {3.0}));
  const auto grid = default_grid(samples, nullptr, 64);
  const auto sum = summarize_samples(samples, grid, nullptr, false);
  for (std::size_t i = 0; i < sum.t.size(); ++i) {
    if (sum.t[i] > 2.0 || sum.t[i] < -1.0) continue;
    CHECK(sum.q05[i] == doctest::Approx(3.0));
    CHECK(sum.q50[i] == doctest::Approx(3.0));
    CHECK(sum.q95[i] == doctest::Approx(3.0));
  }
}

TEST_CASE("two samples with values 1 and 3 have median 2") {
  std::vector<PosteriorSample> samples = {step_sample(-1.0, 2.0, {}, {1.0}),
                                          step_sample(-1.0, 2.0, {}, {3.0})};
  const auto grid = default_grid(samples, nullptr, 16);
  const auto sum = summarize_samples(samples, grid, nullptr, false);
  CHECK(sum.q50[4] == doctest::Approx(2.0));
}

TEST_CASE("quantiles are monotone, non-negative and order-invariant") {
  Rng rng(83);
  std::vector<PosteriorSample> samples;
  for (int i = 0; i < 60; ++i) {
    const double begin = rng.uniform(-2.0, -0.5);
    std::vector<double> s = {rng.uniform(begin + 0.1, 1.9)};
    std::vector<double> h = {rng.gamma(1.0, 1.0), rng.gamma(1.0, 1.0)};
    samples.push_back(step_sample(begin, 2.0, s, h));
  }
  const auto grid = default_grid(samples, nullptr, 100);
  const auto sum = summarize_samples(samples, grid, nullptr, false);
  for (std::size_t i = 0; i < sum.t.size(); ++i) {
    CHECK(sum.q05[i] >= 0.0);
    CHECK(sum.q05[i] <= sum.q50[i]);
    CHECK(sum.q50[i] <= sum.q95[i]);
  }
  auto shuffled = samples;
  std::reverse(shuffled.begin(), shuffled.end());
  const auto sum2 = summarize_samples(shuffled, grid, nullptr, false);
  for (std::size_t i = 0; i < sum.t.size(); ++i)
    CHECK(sum.q50[i] == doctest::Approx(sum2.q50[i]).epsilon(1e-14));
}

TEST_CASE("per-infective rate identities") {
  const auto rem = RemovalData::from_times({0.0, 1.0}, false);

  PosteriorSample one = step_sample(-1.0, 1.0, {}, {2.0});
  one.infection = {-1.0, -0.2};
  const SampleCurve curve(one, &rem);
  // on (-0.2, 0): two infectives, so per-infective halves the rate
  CHECK(curve.per_infective_at(-0.1) == doctest::Approx(1.0));
  // on (-1, -0.2) and (0, 1): one infective
  CHECK(curve.per_infective_at(-0.5) == doctest::Approx(2.0));
  CHECK(curve.per_infective_at(0.5) == doctest::Approx(2.0));
  // outside the support
  CHECK(curve.per_infective_at(-2.0) == 0.0);
}

TEST_CASE("per-infective toy instance matches a hand computation") {
  // 3 individuals: I = (-1, -0.5, 0.3), R = (0, 0.7, 1.5), step rate 2 then 4
  const auto rem = RemovalData::from_times({0.0, 0.7, 1.5}, false);
  PosteriorSample p = step_sample(-1.0, 1.5, {0.2}, {2.0, 4.0});
  p.infection = {-1.0, -0.5, 0.3};
  const SampleCurve curve(p, &rem);
  // t = -0.7: Y = 1, h = 2 -> 2;  t = -0.3: Y = 2, h = 2 -> 1
  CHECK(curve.per_infective_at(-0.7) == doctest::Approx(2.0));
  CHECK(curve.per_infective_at(-0.3) == doctest::Approx(1.0));
  // t = 0.5: infected = {1,2,3}, removed = {1}: Y = 2, h = 4 -> 2
  CHECK(curve.per_infective_at(0.5) == doctest::Approx(2.0));
  // t = 1.0: Y = 1, h = 4 -> 4
  CHECK(curve.per_infective_at(1.0) == doctest::Approx(4.0));
}

TEST_CASE("mass-action curves rebuild beta X Y from the latents") {
  const auto rem = RemovalData::from_times({0.0, 0.7, 1.5}, false);
  PosteriorSample p;
  p.first_infection = -1.0;
  p.infection = {-1.0, -0.5, 0.3};
  p.rate = MassActionRateSample{0.1, 10};
  const SampleCurve curve(p, &rem);
  // t = -0.7: x=10, y=1; t = -0.3: x=9, y=2; t = 0.5: x=8, y=2
  CHECK(curve.rate_at(-0.7) == doctest::Approx(0.1 * 10.0 * 1.0));
  CHECK(curve.rate_at(-0.3) == doctest::Approx(0.1 * 9.0 * 2.0));
  CHECK(curve.rate_at(0.5) == doctest::Approx(0.1 * 8.0 * 2.0));
  CHECK(curve.rate_at(2.0) == 0.0);
  // latents are required
  PosteriorSample bad = p;
  bad.infection.clear();
  CHECK_THROWS(SampleCurve(bad, &rem));
  CHECK_THROWS(SampleCurve(p, nullptr));
}

TEST_CASE("band coverage against a known truth") {
  EpidemicTruth truth;
  truth.beta = 1.0;
  truth.gamma = 1.0;
  truth.population = 1;
  truth.first_infection = -1.0;
  truth.events = {{-1.0, 1.0, 1.0}, {0.5, 0.0, 1.0}, {1.0, 0.0, 0.0}};
  // true rate: 1*1*1 = 1 on [-1, 0.5), 0 on [0.5, 1)
  GridSummary s;
  s.t = {-0.8, -0.2, 0.7};
  s.q05 = {0.5, 1.2, 0.0};
  s.q50 = {1.0, 1.5, 0.1};
  s.q95 = {1.5, 2.0, 0.4};
  s.samples = 10;
  // covered at -0.8 (1 in [0.5,1.5]), not at -0.2 (1 < 1.2), covered at 0.7 (0 in [0,0.4])
  CHECK(band_coverage(s, truth, -1.0, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(band_coverage(s, truth, -1.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("empty sample sets are rejected") {
  std::vector<PosteriorSample> none;
  CHECK_THROWS(default_grid(none, nullptr, 10));
  std::vector<double> grid = {0.0, 1.0};
  CHECK_THROWS(summarize_samples(none, grid, nullptr, false));
}
