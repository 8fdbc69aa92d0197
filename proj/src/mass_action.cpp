#include "mass_action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epirate {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();
}  // namespace

XyTerms xy_walk(std::span<const double> inf, std::span<const double> rem, long population,
                double lo, double hi) {
  XyTerms out;
  const std::size_t n = inf.size();
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(inf.begin(), inf.end(), lo) - inf.begin());
  std::size_t j = static_cast<std::size_t>(
      std::lower_bound(rem.begin(), rem.end(), lo) - rem.begin());
  long x = population - std::max<long>(0, static_cast<long>(i) - 1);
  long y = static_cast<long>(i) - static_cast<long>(j);
  double t = lo;
  while (true) {
    const double ti = i < n ? inf[i] : kPosInf;
    const double tj = j < n ? rem[j] : kPosInf;
    const double te = std::min(ti, tj);
    if (te > hi) break;
    out.integral += static_cast<double>(x) * static_cast<double>(y) * (te - t);
    t = te;
    if (ti <= tj) {  // ties resolve as infection-before-removal
      if (i == 0) {
        y += 1;  // the initial infective consumes no susceptible
      } else {
        if (x <= 0 || y <= 0) {
          out.valid = false;
          out.log_product = kNegInf;
          return out;
        }
        out.log_product += std::log(static_cast<double>(x) * static_cast<double>(y));
        x -= 1;
        y += 1;
      }
      ++i;
    } else {
      y -= 1;
      ++j;
      if (y < 0) {
        out.valid = false;
        out.log_product = kNegInf;
        return out;
      }
    }
  }
  if (hi > t) out.integral += static_cast<double>(x) * static_cast<double>(y) * (hi - t);
  return out;
}

XyTerms xy_terms(std::span<const double> inf, std::span<const double> rem, long population) {
  return xy_walk(inf, rem, population, inf.front(), rem.back());
}

void move_sorted_element(std::vector<double>& v, double old_t, double new_t) {
  if (new_t > old_t) {
    const auto it_old = std::lower_bound(v.begin(), v.end(), old_t);
    const auto it_new = std::upper_bound(v.begin(), v.end(), new_t) - 1;
    std::rotate(it_old, it_old + 1, it_new + 1);
    *it_new = new_t;
  } else {
    const auto it_new = std::upper_bound(v.begin(), v.end(), new_t);
    const auto it_old = std::lower_bound(v.begin(), v.end(), old_t);
    std::rotate(it_new, it_old, it_old + 1);
    *it_new = new_t;
  }
}

MassActionChain::MassActionChain(RemovalData data, MassActionConfig ma, SamplerSettings cfg)
    : MassActionChain(std::move(data), ma, cfg, Latents{}, 0.0, 0.0) {}

MassActionChain::MassActionChain(RemovalData data, MassActionConfig ma, SamplerSettings cfg,
                                 Latents latents, double beta, double gamma)
    : data_(std::move(data)), ma_(ma), cfg_(cfg), n_(data_.n()), rng_(cfg.seed) {
  if (ma_.population < n_)
    throw std::invalid_argument("mass action: population must be at least n");
  if (latents.infection.empty()) {
    // random start, repaired the same way as the non-parametric chains; the
    // bootstrap chain gets its own stream so ours is not replayed
    SamplerSettings tmp = cfg_;
    tmp.seed = cfg_.seed + 0x9e3779b97f4a7c15ULL;
    RatePrior dummy;
    StepChain boot(data_, dummy, tmp);
    latents_ = boot.latents();
    gamma_ = cfg_.mu_gamma > 0.0 ? cfg_.kappa_gamma / cfg_.mu_gamma : 1.0;
    beta_ = 1.0 / static_cast<double>(ma_.population);  // crude R0 ~ 1 start
  } else {
    if (latents.n() != n_) throw std::invalid_argument("mass action: latent length mismatch");
    latents_ = std::move(latents);
    if (!chi_valid(latents_, data_))
      throw std::invalid_argument("mass action: chi fails for the pinned state");
    beta_ = beta;
    gamma_ = gamma;
    if (!(beta_ > 0.0) || !(gamma_ > 0.0))
      throw std::invalid_argument("mass action: beta and gamma must be positive");
  }
  refresh_caches(false);
  if (!std::isfinite(log_product_xy_))
    throw std::invalid_argument("mass action: invalid initial trajectory");
}

void MassActionChain::refresh_caches(bool record_drift) {
  const double cached = cached_log_likelihood();
  sorted_inf_ = latents_.infection;
  std::sort(sorted_inf_.begin(), sorted_inf_.end());
  sum_periods_ = 0.0;
  for (int i = 0; i < n_; ++i) sum_periods_ += data_[i] - latents_.infection[i];
  const XyTerms terms = xy_terms(sorted_inf_, data_.times(), ma_.population);
  integral_xy_ = terms.integral;
  log_product_xy_ = terms.log_product;
  if (record_drift) max_drift_ = std::max(max_drift_, std::abs(cached - cached_log_likelihood()));
}

double MassActionChain::cached_log_likelihood() const {
  return n_ * std::log(gamma_) + (n_ - 1) * std::log(beta_) + log_product_xy_ -
         gamma_ * sum_periods_ - beta_ * integral_xy_;
}

double MassActionChain::recomputed_log_likelihood() const {
  std::vector<double> s = latents_.infection;
  std::sort(s.begin(), s.end());
  if (!chi_valid_sorted(s, data_.times())) return kNegInf;
  double sp = 0.0;
  for (int i = 0; i < n_; ++i) sp += data_[i] - latents_.infection[i];
  const XyTerms terms = xy_terms(s, data_.times(), ma_.population);
  return n_ * std::log(gamma_) + (n_ - 1) * std::log(beta_) + terms.log_product -
         gamma_ * sp - beta_ * terms.integral;
}

void MassActionChain::gibbs_gamma() {
  gamma_ = rng_.gamma(cfg_.kappa_gamma + n_, cfg_.mu_gamma + sum_periods_);
}

void MassActionChain::gibbs_beta() {
  beta_ = rng_.gamma(ma_.nu_beta + (n_ - 1), ma_.lambda_beta + integral_xy_);
}

void MassActionChain::attempt_infection_update() {
  if (n_ < 2) return;
  const auto r = rng_.uniform_index(static_cast<std::uint64_t>(n_) - 1);
  const int idx = static_cast<int>(r) >= latents_.omega ? static_cast<int>(r) + 1
                                                        : static_cast<int>(r);
  const double t0 = latents_.first_infection();
  const double t_new = data_[idx] - rng_.truncated_exponential(gamma_, data_[idx] - t0);
  const double t_old = latents_.infection[idx];
  if (!chi_valid_after_move(sorted_inf_, data_.times(), t_old, t_new)) return;
  const double lo = std::min(t_old, t_new), hi = std::max(t_old, t_new);
  const XyTerms before = xy_walk(sorted_inf_, data_.times(), ma_.population, lo, hi);
  move_sorted_element(sorted_inf_, t_old, t_new);
  const XyTerms after = xy_walk(sorted_inf_, data_.times(), ma_.population, lo, hi);
  const double log_acc = (after.log_product - before.log_product) -
                         beta_ * (after.integral - before.integral);
  if (after.valid && std::log(rng_.uniform_open()) < log_acc) {
    latents_.infection[idx] = t_new;
    sum_periods_ += t_old - t_new;
    integral_xy_ += after.integral - before.integral;
    log_product_xy_ += after.log_product - before.log_product;
  } else {
    move_sorted_element(sorted_inf_, t_new, t_old);  // roll back
  }
}

void MassActionChain::attempt_first_infection() {
  // the full conditional of I_omega is a shifted exponential, so this is an
  // exact Gibbs draw
  const double m = n_ >= 2 ? sorted_inf_[1] : data_[0];
  const double rate = cfg_.theta + gamma_ + beta_ * static_cast<double>(ma_.population);
  const double t0 = latents_.first_infection();
  const double t_new = m - rng_.exponential(rate);
  latents_.infection[latents_.omega] = t_new;
  sorted_inf_[0] = t_new;
  sum_periods_ += t0 - t_new;
  integral_xy_ += static_cast<double>(ma_.population) * (t0 - t_new);
}

void MassActionChain::attempt_omega_swap() {
  const double r_omega = data_[latents_.omega];
  std::vector<int> candidates;
  candidates.reserve(n_);
  for (int i = 0; i < n_; ++i)
    if (latents_.infection[i] < r_omega) candidates.push_back(i);
  const int c = candidates[rng_.uniform_index(candidates.size())];
  if (c == latents_.omega) return;
  std::swap(latents_.infection[latents_.omega], latents_.infection[c]);
  latents_.omega = c;
}

void MassActionChain::iterate() {
  ++iter_;
  gibbs_gamma();
  gibbs_beta();
  const int updates =
      cfg_.infection_updates > 0 ? cfg_.infection_updates : std::max(1, n_ / 10);
  for (int i = 0; i < updates; ++i) attempt_infection_update();
  attempt_first_infection();
  attempt_omega_swap();
  if (cfg_.consistency_interval > 0 && iter_ % cfg_.consistency_interval == 0)
    refresh_caches(true);
}

PosteriorSample MassActionChain::make_sample() const {
  PosteriorSample s;
  s.iter = iter_;
  s.gamma = gamma_;
  s.mu = 0.0;
  s.has_mu = false;
  s.loglik = cached_log_likelihood();
  s.omega = latents_.omega;
  s.first_infection = latents_.first_infection();
  s.infection = latents_.infection;  // the rate curve is a function of the latents
  s.rate = MassActionRateSample{beta_, ma_.population};
  return s;
}

void MassActionChain::run(const SampleSink& sink) {
  for (long long i = 0; i < cfg_.iterations; ++i) {
    iterate();
    if (iter_ > cfg_.burn_in && (iter_ - cfg_.burn_in) % cfg_.thin == 0) {
      if (sink && !sink(make_sample())) break;
    }
  }
}

}  // namespace epirate
