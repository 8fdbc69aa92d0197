#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace epirate {

double EpidemicTruth::true_rate(double t) const {
  if (events.empty() || t < events.front()[0] || t > events.back()[0]) return 0.0;
  // last event at or before t; the trajectory is right-continuous
  auto it = std::upper_bound(events.begin(), events.end(), t,
                             [](double v, const std::array<double, 3>& e) { return v < e[0]; });
  const auto& e = *(it - 1);
  double h = beta * e[1] * e[2];
  if (seasonal) h *= 1.0 + std::cos(t - first_infection);
  return h;
}

namespace {

struct RawEpidemic {
  std::vector<double> infection;  // per individual, in infection order
  std::vector<double> removal;    // per individual
  std::vector<std::array<double, 3>> events;
};

RawEpidemic run_once(const SimConfig& cfg, Rng& rng) {
  RawEpidemic ep;
  long x = cfg.population;
  long y = 1;
  double t = 0.0;
  ep.infection.push_back(0.0);  // the initial infective
  ep.removal.push_back(-1.0);
  ep.events.push_back({0.0, static_cast<double>(x), static_cast<double>(y)});
  std::vector<int> active = {0};
  const double bound_factor = cfg.seasonal ? 2.0 : std::max(1.0, cfg.thinning_bound_factor);
  while (y > 0) {
    const double inf_bound =
        bound_factor * cfg.beta * static_cast<double>(x) * static_cast<double>(y);
    const double total = inf_bound + cfg.gamma * static_cast<double>(y);
    t += rng.exponential(total);
    if (rng.uniform() * total < inf_bound) {
      if (cfg.seasonal) {
        // accept with (1 + cos(t - I_(1)))/2 against the dominating rate
        if (rng.uniform() >= 0.5 * (1.0 + std::cos(t))) continue;
      } else if (bound_factor > 1.0) {
        if (rng.uniform() >= 1.0 / bound_factor) continue;
      }
      const int id = static_cast<int>(ep.infection.size());
      ep.infection.push_back(t);
      ep.removal.push_back(-1.0);
      active.push_back(id);
      --x;
      ++y;
    } else {
      const auto pick = rng.uniform_index(active.size());
      ep.removal[active[pick]] = t;
      active[pick] = active.back();
      active.pop_back();
      --y;
    }
    ep.events.push_back({t, static_cast<double>(x), static_cast<double>(y)});
  }
  return ep;
}

}  // namespace

SimResult simulate_epidemic(const SimConfig& cfg, Rng& rng) {
  if (cfg.population < 1 || !(cfg.beta >= 0.0) || !(cfg.gamma > 0.0))
    throw std::invalid_argument("simulate: need population >= 1, beta >= 0, gamma > 0");
  const long want = std::max<long>(1, cfg.min_final_size);
  RawEpidemic ep;
  for (;;) {
    ep = run_once(cfg, rng);
    if (static_cast<long>(ep.infection.size()) >= want) break;
  }

  const int n = static_cast<int>(ep.infection.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ep.removal[a] < ep.removal[b]; });
  const double shift = ep.removal[order[0]];

  SimResult res;
  std::vector<double> rem(n);
  res.truth.infection.resize(n);
  for (int i = 0; i < n; ++i) {
    rem[i] = ep.removal[order[i]] - shift;
    res.truth.infection[i] = ep.infection[order[i]] - shift;
    if (order[i] == 0) res.truth.omega = i;
  }
  res.removals = RemovalData::from_times(std::move(rem), /*normalize=*/false);
  res.truth.beta = cfg.beta;
  res.truth.gamma = cfg.gamma;
  res.truth.seasonal = cfg.seasonal;
  res.truth.population = cfg.population;
  res.truth.first_infection = -shift;
  res.truth.events = std::move(ep.events);
  for (auto& e : res.truth.events) e[0] -= shift;
  return res;
}

}  // namespace epirate
