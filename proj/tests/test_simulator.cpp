#include <doctest.h>

#include <cmath>

#include "latents.hpp"
#include "oracles.hpp"
#include "simulator.hpp"
#include "stats.hpp"

using namespace epirate;

TEST_CASE("beta = 0 gives exactly one removal") {
  SimConfig cfg;
  cfg.population = 100;
  cfg.beta = 0.0;
  cfg.gamma = 2.0;
  Rng rng(1);
  const auto res = simulate_epidemic(cfg, rng);
  CHECK(res.final_size() == 1);
  CHECK(res.removals.n() == 1);
  CHECK(res.removals[0] == 0.0);
  CHECK(res.truth.infection[0] < 0.0);
}

TEST_CASE("simulated epidemics satisfy the bookkeeping invariants") {
  SimConfig cfg;
  cfg.population = 200;
  cfg.beta = 1.7 / 200.0;
  cfg.gamma = 1.0;
  cfg.min_final_size = 20;
  Rng rng(3);
  const auto res = simulate_epidemic(cfg, rng);
  const int n = res.removals.n();
  REQUIRE(n >= 20);
  // x + y + removed = population + 1 at every event; y >= 0; times sorted
  double prev_t = res.truth.events.front()[0];
  for (std::size_t e = 0; e < res.truth.events.size(); ++e) {
    const auto& ev = res.truth.events[e];
    CHECK(ev[0] >= prev_t);
    prev_t = ev[0];
    CHECK(ev[2] >= 0.0);
  }
  // infection times pair with removals and chi holds for the truth
  Latents lat{res.truth.infection, res.truth.omega};
  for (int i = 0; i < n; ++i) CHECK(lat.infection[i] < res.removals[i]);
  CHECK(chi_valid(lat, res.removals));
  CHECK(lat.first_infection() == res.truth.first_infection);
  // the true rate is beta*x*y, zero after the epidemic dies
  CHECK(res.truth.true_rate(res.removals.last()) == 0.0);
  CHECK(res.truth.true_rate(res.truth.first_infection) ==
        doctest::Approx(cfg.beta * 200.0));
}

TEST_CASE("final-size distribution matches the exact jump chain (quick version)") {
  SimConfig cfg;
  cfg.population = 3;
  cfg.beta = 0.9;
  cfg.gamma = 1.0;
  Rng rng(17);
  const auto pmf = oracles::exact_final_size_pmf(3, cfg.beta, cfg.gamma);
  std::vector<double> counts(pmf.size(), 0.0);
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    const auto res = simulate_epidemic(cfg, rng);
    counts[static_cast<std::size_t>(res.final_size())] += 1.0 / reps;
  }
  CHECK(stats::total_variation(counts, pmf) < 0.01);
}

TEST_CASE("thinning with a constant modulation matches the direct simulator") {
  SimConfig direct;
  direct.population = 60;
  direct.beta = 0.03;
  direct.gamma = 1.0;
  SimConfig thinned = direct;
  thinned.thinning_bound_factor = 2.0;  // dominate then accept half
  Rng rng_a(23), rng_b(24);
  std::vector<double> fs_direct, fs_thinned;
  for (int rep = 0; rep < 3000; ++rep) {
    fs_direct.push_back(static_cast<double>(simulate_epidemic(direct, rng_a).final_size()));
    fs_thinned.push_back(static_cast<double>(simulate_epidemic(thinned, rng_b).final_size()));
  }
  const auto ks = stats::ks_two_sample(fs_direct, fs_thinned);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("seasonal thinning concentrates infections near the rate peak") {
  SimConfig cfg;
  cfg.population = 50;
  cfg.beta = 0.05;
  cfg.gamma = 1.0;
  cfg.seasonal = true;
  Rng rng(23);
  long near_peak = 0, near_trough = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const auto res = simulate_epidemic(cfg, rng);
    for (double t : res.truth.infection) {
      const double phase = std::fmod(t - res.truth.first_infection, 2.0 * M_PI);
      if (phase < 1.0 || phase > 2.0 * M_PI - 1.0) ++near_peak;
      if (std::abs(phase - M_PI) < 1.0) ++near_trough;
    }
  }
  CHECK(near_peak > 4 * near_trough);
}

TEST_CASE("seasonal simulation reaches large outbreaks at the reported scale") {
  SimConfig cfg;
  cfg.population = 2000;
  cfg.beta = 1.7 / 2000.0;
  cfg.gamma = 1.0;
  cfg.seasonal = true;
  cfg.min_final_size = 200;
  Rng rng(29);
  const auto res = simulate_epidemic(cfg, rng);
  CHECK(res.final_size() >= 200);
  CHECK(res.final_size() <= 2001);
}

TEST_CASE("gse major outbreaks near the documented regime") {
  SimConfig cfg;
  cfg.population = 1000;
  cfg.beta = 1.7e-3;
  cfg.gamma = 1.0;
  cfg.min_final_size = 100;
  Rng rng(7);
  const auto res = simulate_epidemic(cfg, rng);
  // R0 = 1.7: major outbreaks infect roughly two thirds of the population
  CHECK(res.final_size() > 450);
  CHECK(res.final_size() < 900);
}
