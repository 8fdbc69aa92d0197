#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "latents.hpp"
#include "likelihood.hpp"
#include "removal_data.hpp"
#include "rng.hpp"
#include "step_rate.hpp"

using namespace epirate;

TEST_CASE("removal data normalizes and sorts") {
  const auto d = RemovalData::from_times({3.0, 1.0, 5.0});
  CHECK(d.n() == 3);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 2.0);
  CHECK(d[2] == 4.0);
}

TEST_CASE("removal CSV ingest tolerates an optional header") {
  const char* path = "test_removals_tmp.csv";
  {
    std::ofstream out(path);
    out << "time\n2.5\n0.5\n\n1.5\n";
  }
  const auto d = RemovalData::load_csv(path);
  CHECK(d.n() == 3);
  CHECK(d[0] == 0.0);
  CHECK(d[2] == 2.0);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "1\nnot_a_number\n";
  }
  CHECK_THROWS(RemovalData::load_csv(path));
  std::remove(path);
}

TEST_CASE("chi validity") {
  const auto r1 = RemovalData::from_times({0.0}, false);
  CHECK(chi_valid(Latents{{-1.0}, 0}, r1));

  // a gap with zero infectives: I_(2)=0.5 > R_(1)=0
  const auto r2 = RemovalData::from_times({0.0, 1.0}, false);
  CHECK_FALSE(chi_valid(Latents{{-1.0, 0.5}, 0}, r2));

  const auto r3 = RemovalData::from_times({0.0, 0.5, 2.0}, false);
  CHECK(chi_valid(Latents{{-1.0, -0.2, 0.4}, 0}, r3));

  CHECK_THROWS(chi_valid(Latents{{-1.0}, 0}, r2));
}

TEST_CASE("chi incremental check agrees with the full scan") {
  const auto rem = RemovalData::from_times({0.0, 0.4, 1.1, 2.0, 2.0, 3.7}, false);
  std::vector<double> inf = {-1.0, -0.3, 0.2, 0.9, 1.4, 1.9};
  REQUIRE(chi_valid_sorted(inf, rem.times()));
  Rng rng(5);
  for (int rep = 0; rep < 2000; ++rep) {
    const int idx = 1 + static_cast<int>(rng.uniform_index(5));
    const double old_t = inf[idx];
    const double new_t = rng.uniform(-1.0, 3.6);
    std::vector<double> moved = inf;
    moved.erase(moved.begin() + idx);
    moved.insert(std::upper_bound(moved.begin(), moved.end(), new_t), new_t);
    const bool full = chi_valid_sorted(moved, rem.times());
    CHECK(chi_valid_after_move(inf, rem.times(), old_t, new_t) == full);
    if (full) inf = moved;
  }
}

TEST_CASE("log likelihood on hand-evaluated instances") {
  // single individual: no product term
  const auto r1 = RemovalData::from_times({0.0}, false);
  const StepRate c1(-2.0, 0.0, {}, {3.0});
  CHECK(log_likelihood(Latents{{-2.0}, 0}, r1, c1, 1.0) ==
        doctest::Approx(0.0 - 2.0 - 3.0 * 2.0).epsilon(1e-12));

  // constant rate c=2, n=2: log 2 - 6.5
  const auto r2 = RemovalData::from_times({0.0, 1.0}, false);
  const StepRate c2(-1.0, 1.0, {}, {2.0});
  CHECK(log_likelihood(Latents{{-1.0, -0.5}, 0}, r2, c2, 1.0) ==
        doctest::Approx(std::log(2.0) - 6.5).epsilon(1e-12));

  // chi failure gives -inf
  const StepRate c3(-1.0, 1.0, {}, {2.0});
  CHECK(log_likelihood(Latents{{-1.0, 0.5}, 0}, r2, c3, 1.0) == -INFINITY);

  CHECK_THROWS(log_likelihood(Latents{{-1.0, -0.5}, 0}, r2, c2, 0.0));
  CHECK_THROWS(log_likelihood(Latents{{-1.0, -0.5}, 0}, r2, c2, -1.0));
}

TEST_CASE("log likelihood is invariant under reindexing individuals") {
  const auto rem = RemovalData::from_times({0.0, 0.5, 2.0}, false);
  const StepRate rate(-1.0, 2.0, {0.3}, {1.5, 0.7});
  const Latents a{{-1.0, -0.2, 0.4}, 0};
  // swap individuals 1 and 2 together with their removals
  const auto rem_swapped = RemovalData::from_times({0.0, 2.0, 0.5}, false);
  const Latents b{{-1.0, 0.4, -0.2}, 0};
  CHECK(log_likelihood(a, rem, rate, 1.3) ==
        doctest::Approx(log_likelihood(b, rem_swapped, rate, 1.3)).epsilon(1e-12));
}

TEST_CASE("likelihood ratios match a direct density-ratio computation") {
  // exp(loglik difference) against a term-by-term product evaluated in
  // long double, for a pair of 3-individual states under a 2-step rate
  const auto rem = RemovalData::from_times({0.0, 0.8, 2.4}, false);
  const StepRate rate(-1.5, 2.4, {0.2, 1.1}, {0.6, 2.2, 1.1});
  const Latents A{{-1.5, -0.4, 0.7}, 0};
  const Latents B{{-1.5, -0.1, 0.3}, 0};
  const double gamma = 0.8;

  auto direct_density = [&](const Latents& lat) -> long double {
    long double v = 1.0L;
    for (int i = 0; i < 3; ++i) v *= std::exp((long double)(-gamma * (rem[i] - lat.infection[i])));
    for (int i = 1; i < 3; ++i) v *= (long double)rate.left_limit(lat.infection[i]);
    v *= std::pow((long double)gamma, 3.0L);
    v *= std::exp(-(long double)rate.integral());
    return v;
  };
  const double lhs = std::exp(log_likelihood(A, rem, rate, gamma) -
                              log_likelihood(B, rem, rate, gamma));
  const double rhs = static_cast<double>(direct_density(A) / direct_density(B));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("constant-rate integral is exact") {
  const StepRate c(-3.0, 2.0, {}, {1.7});
  CHECK(c.integral() == doctest::Approx(1.7 * 5.0).epsilon(1e-15));
}
