#include "rj_chain.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "likelihood.hpp"
#include "rj_moves.hpp"

namespace epirate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

const std::vector<double>& seg_positions(const StepRate& r) { return r.changepoints(); }
const std::vector<double>& seg_positions(const SplineRate& r) { return r.interior_knots(); }
const std::vector<double>& seg_values(const StepRate& r) { return r.heights(); }
const std::vector<double>& seg_values(const SplineRate& r) { return r.free_coeffs(); }

// boundary of segment j: begin for j=0, end for j=k+1
double seg_boundary(const StepRate& r, int j) { return r.boundary(j); }
double seg_boundary(const SplineRate& r, int j) { return r.knot(j + 2); }

StepRate remake(const StepRate& r, std::vector<double> pos, std::vector<double> val) {
  return StepRate(r.support_begin(), r.support_end(), std::move(pos), std::move(val));
}
SplineRate remake(const SplineRate& r, std::vector<double> pos, std::vector<double> val) {
  return SplineRate(r.support_begin(), r.support_end(), std::move(pos), std::move(val));
}

Latents initial_latents(const RemovalData& data, const SamplerSettings& cfg, Rng& rng) {
  const int n = data.n();
  const double mean_period =
      (cfg.mu_gamma > 0.0 && cfg.kappa_gamma > 0.0) ? cfg.mu_gamma / cfg.kappa_gamma : 1.0;
  Latents lat;
  lat.infection.resize(n);
  for (int i = 0; i < n; ++i)
    lat.infection[i] = data[i] - mean_period * rng.exponential(1.0);

  // repair: whenever the ordered infections strand the epidemic, pull the
  // offending infection back before the gap
  std::vector<int> order(n);
  const long max_attempts = 100L * n + 100;
  for (long attempt = 0; attempt < max_attempts; ++attempt) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lat.infection[a] < lat.infection[b]; });
    int bad = -1;
    for (int m = 1; m < n; ++m) {
      if (lat.infection[order[m]] > data[m - 1]) {
        bad = m;
        break;
      }
    }
    if (bad < 0) {
      lat.omega = order[0];
      return lat;
    }
    const int j = order[bad];
    const double lo = lat.infection[order[0]];
    const double hi = std::min(data[bad - 1], data[j]);
    lat.infection[j] = rng.uniform(lo, hi);
  }
  throw std::runtime_error("sampler: failed to construct a valid initial latent state");
}

template <class RateT>
RateT initial_rate(const Latents& lat, const RemovalData& data) {
  const double t0 = lat.first_infection();
  const double span = data.last() - t0;
  const double level = std::max(1e-8, data.n() / span);
  if constexpr (std::is_same_v<RateT, StepRate>) {
    return StepRate(t0, data.last(), {}, {level});
  } else {
    return SplineRate(t0, data.last(), {}, {2.0 * level});
  }
}

template <class RateT>
RateT initial_prior_rate(const RatePrior& prior, double begin, double end, double mu,
                         Rng& rng) {
  if constexpr (std::is_same_v<RateT, StepRate>) {
    return sample_step_prior(prior, begin, end, mu, rng);
  } else {
    return sample_spline_prior(prior, begin, end, mu, rng);
  }
}

double initial_mu(const RatePrior& prior, double mean_value) {
  if (prior.variant != HeightPrior::independent) return 0.0;
  if (prior.b > 0.0) return prior.a / prior.b;
  return prior.kappa / mean_value;
}

}  // namespace

template <class RateT>
RjChain<RateT>::RjChain(RemovalData data, RatePrior prior, SamplerSettings cfg)
    : data_(std::move(data)),
      prior_(prior),
      cfg_(cfg),
      sched_(prior.lambda, prior.k_max),
      n_(data_.n()),
      rng_(cfg.seed),
      latents_(initial_latents(data_, cfg_, rng_)),
      rate_(initial_rate<RateT>(latents_, data_)),
      gamma_(cfg.mu_gamma > 0.0 ? cfg.kappa_gamma / cfg.mu_gamma : 1.0),
      mu_(initial_mu(prior_, seg_values(rate_)[0])) {
  if (prior_.variant == HeightPrior::martingale && !std::is_same_v<RateT, StepRate>)
    throw std::invalid_argument("sampler: the martingale prior applies to step rates only");
  refresh_caches(false);
}

template <class RateT>
RjChain<RateT>::RjChain(RemovalData data, RatePrior prior, SamplerSettings cfg, RateT rate,
                        Latents latents, double gamma, double mu)
    : data_(std::move(data)),
      prior_(prior),
      cfg_(cfg),
      sched_(prior.lambda, prior.k_max),
      n_(data_.n()),
      rng_(cfg.seed),
      latents_(std::move(latents)),
      rate_(std::move(rate)),
      gamma_(gamma),
      mu_(mu) {
  if (latents_.n() != n_) throw std::invalid_argument("sampler: latent/removal length mismatch");
  for (int i = 0; i < n_; ++i)
    if (!(latents_.infection[i] < data_[i]))
      throw std::invalid_argument("sampler: infection times must precede removals");
  if (!chi_valid(latents_, data_)) throw std::invalid_argument("sampler: chi fails for the pinned state");
  if (rate_.support_begin() != latents_.first_infection() || rate_.support_end() != data_.last())
    throw std::invalid_argument("sampler: rate support must be [I_omega, R_n]");
  if (!(gamma_ > 0.0)) throw std::invalid_argument("sampler: gamma must be positive");
  refresh_caches(false);
}

template <class RateT>
RjChain<RateT>::RjChain(RatePrior prior, double support_begin, double support_end, double mu,
                        std::uint64_t seed)
    : data_(),
      prior_(prior),
      cfg_(),
      sched_(prior.lambda, prior.k_max),
      prior_only_(true),
      n_(0),
      rng_(seed),
      latents_(),
      rate_(initial_prior_rate<RateT>(prior, support_begin, support_end, mu, rng_)),
      gamma_(1.0),
      mu_(mu) {}

template <class RateT>
void RjChain<RateT>::refresh_caches(bool record_drift) {
  if (prior_only_) return;
  const double cached = cached_log_likelihood();
  sorted_inf_ = latents_.infection;
  std::sort(sorted_inf_.begin(), sorted_inf_.end());
  sum_periods_ = 0.0;
  for (int i = 0; i < n_; ++i) sum_periods_ += data_[i] - latents_.infection[i];
  integral_ = rate_.integral();
  log_product_ = log_product_over(rate_, rate_.support_begin(), rate_.support_end());
  if (record_drift) max_drift_ = std::max(max_drift_, std::abs(cached - cached_log_likelihood()));
}

template <class RateT>
double RjChain<RateT>::cached_log_likelihood() const {
  return n_ * std::log(gamma_) + log_product_ - gamma_ * sum_periods_ - integral_;
}

template <class RateT>
double RjChain<RateT>::recomputed_log_likelihood() const {
  return log_likelihood(latents_, data_, rate_, gamma_);
}

template <class RateT>
long RjChain<RateT>::count_infections(double lo, double hi) const {
  const auto b = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), lo);
  const auto e = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), hi);
  return static_cast<long>(e - b);
}

template <class RateT>
double RjChain<RateT>::log_product_over(const RateT& r, double lo, double hi) const {
  const auto b = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), lo);
  const auto e = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), hi);
  double s = 0.0;
  for (auto it = b; it != e; ++it) s += std::log(r.left_limit(*it));
  return s;
}

template <class RateT>
double RjChain<RateT>::delta_log_product_over(const RateT& cand, double lo, double hi) const {
  const auto b = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), lo);
  const auto e = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), hi);
  double s = 0.0;
  for (auto it = b; it != e; ++it)
    s += std::log(cand.left_limit(*it)) - std::log(rate_.left_limit(*it));
  return s;
}

// ---------------------------------------------------------------------------
// move cores

template <class RateT>
typename RjChain<RateT>::MoveOutcome RjChain<RateT>::birth_outcome(double s_star,
                                                                   double u) const {
  MoveOutcome out;
  const auto& pos = seg_positions(rate_);
  const auto& val = seg_values(rate_);
  const int k = static_cast<int>(pos.size());
  const double L = rate_.support_begin(), R = rate_.support_end();
  if (k >= sched_.k_max()) return out;
  if (!(s_star > L && s_star < R)) return out;
  if (std::binary_search(pos.begin(), pos.end(), s_star)) return out;  // fp collision
  const int seg =
      static_cast<int>(std::upper_bound(pos.begin(), pos.end(), s_star) - pos.begin());
  const double lo = seg_boundary(rate_, seg), hi = seg_boundary(rate_, seg + 1);
  const ValueSplit vs = split_value(val[seg], s_star - lo, hi - s_star, u);
  if (!(vs.left > 0.0) || !(vs.right > 0.0) || !std::isfinite(vs.left) ||
      !std::isfinite(vs.right))
    return out;  // unrepresentable split
  out.ok = true;
  out.segment = seg;
  out.value_left = vs.left;
  out.value_right = vs.right;

  if (!prior_only_) {
    if constexpr (std::is_same_v<RateT, StepRate>) {
      const long cl = count_infections(lo, s_star);
      const long cr = count_infections(s_star, hi);
      out.d_log_product = cl * std::log(vs.left) + cr * std::log(vs.right) -
                          (cl + cr) * std::log(val[seg]);
      out.d_integral = vs.left * (s_star - lo) + vs.right * (hi - s_star) -
                       val[seg] * (hi - lo);
    } else {
      auto p = pos;
      auto v = val;
      p.insert(p.begin() + seg, s_star);
      v[seg] = vs.left;
      v.insert(v.begin() + seg + 1, vs.right);
      const RateT cand = remake(rate_, std::move(p), std::move(v));
      out.d_log_product = log_product_over(cand, L, R) - log_product_;
      out.d_integral = cand.integral() - integral_;
    }
  }

  const double value_ratio =
      prior_.variant == HeightPrior::independent
          ? birth_log_values_prior_ratio_independent(val[seg], vs.left, vs.right,
                                                     prior_.kappa, mu_)
          : birth_log_values_prior_ratio_martingale(val, seg, vs.left, vs.right, prior_);
  out.log_acc = (out.d_log_product - out.d_integral) +
                birth_log_positions_prior_ratio(sched_.log_pmf_step_up(k), k, R - L,
                                                s_star - lo, hi - s_star) +
                value_ratio + birth_log_proposal_ratio(sched_.birth(k), sched_.death(k + 1), k, R - L) +
                birth_log_jacobian(val[seg], vs.left, vs.right);
  return out;
}

template <class RateT>
typename RjChain<RateT>::MoveOutcome RjChain<RateT>::death_outcome(int position_index) const {
  MoveOutcome out;
  const auto& pos = seg_positions(rate_);
  const auto& val = seg_values(rate_);
  const int k = static_cast<int>(pos.size());
  if (position_index < 0 || position_index >= k) return out;
  const double L = rate_.support_begin(), R = rate_.support_end();
  const double p = pos[position_index];
  const double lo = seg_boundary(rate_, position_index);
  const double hi = seg_boundary(rate_, position_index + 2);
  const double v_l = val[position_index], v_r = val[position_index + 1];
  const double vm = merge_value(v_l, v_r, p - lo, hi - p);
  if (!(vm > 0.0) || !std::isfinite(vm)) return out;
  out.ok = true;
  out.segment = position_index;
  out.value_left = vm;

  std::vector<double> merged_pos = pos;
  merged_pos.erase(merged_pos.begin() + position_index);
  std::vector<double> merged_val = val;
  merged_val[position_index] = vm;
  merged_val.erase(merged_val.begin() + position_index + 1);

  if (!prior_only_) {
    if constexpr (std::is_same_v<RateT, StepRate>) {
      const long cl = count_infections(lo, p);
      const long cr = count_infections(p, hi);
      out.d_log_product =
          (cl + cr) * std::log(vm) - cl * std::log(v_l) - cr * std::log(v_r);
      out.d_integral = vm * (hi - lo) - v_l * (p - lo) - v_r * (hi - p);
    } else {
      const RateT cand = remake(rate_, merged_pos, merged_val);
      out.d_log_product = log_product_over(cand, L, R) - log_product_;
      out.d_integral = cand.integral() - integral_;
    }
  }

  // inverse of the birth that would recreate the current state from the
  // merged one
  const int km = k - 1;
  const double value_ratio =
      prior_.variant == HeightPrior::independent
          ? birth_log_values_prior_ratio_independent(vm, v_l, v_r, prior_.kappa, mu_)
          : birth_log_values_prior_ratio_martingale(merged_val, position_index, v_l, v_r,
                                                    prior_);
  const double log_birth =
      birth_log_positions_prior_ratio(sched_.log_pmf_step_up(km), km, R - L, p - lo, hi - p) +
      value_ratio + birth_log_proposal_ratio(sched_.birth(km), sched_.death(km + 1), km, R - L) +
      birth_log_jacobian(vm, v_l, v_r);
  out.log_acc = (out.d_log_product - out.d_integral) - log_birth;
  return out;
}

template <class RateT>
typename RjChain<RateT>::MoveOutcome RjChain<RateT>::move_position_outcome(
    int position_index, double s_new) const {
  MoveOutcome out;
  const auto& pos = seg_positions(rate_);
  const auto& val = seg_values(rate_);
  const int k = static_cast<int>(pos.size());
  if (position_index < 0 || position_index >= k) return out;
  const double s_old = pos[position_index];
  const double lo = seg_boundary(rate_, position_index);
  const double hi = seg_boundary(rate_, position_index + 2);
  if (!(s_new > lo && s_new < hi)) return out;  // zero prior mass at the edges
  out.ok = true;
  out.segment = position_index;

  if (!prior_only_) {
    if constexpr (std::is_same_v<RateT, StepRate>) {
      const double v_l = val[position_index], v_r = val[position_index + 1];
      long cnt = 0;
      if (s_new > s_old) {
        cnt = count_infections(s_old, s_new);
        out.d_log_product = cnt * (std::log(v_l) - std::log(v_r));
      } else {
        cnt = count_infections(s_new, s_old);
        out.d_log_product = cnt * (std::log(v_r) - std::log(v_l));
      }
      out.d_integral = (s_new - s_old) * (v_l - v_r);
    } else {
      auto p = pos;
      p[position_index] = s_new;
      const RateT cand = remake(rate_, std::move(p), val);
      out.d_log_product =
          log_product_over(cand, rate_.support_begin(), rate_.support_end()) - log_product_;
      out.d_integral = cand.integral() - integral_;
    }
  }
  out.log_acc = (out.d_log_product - out.d_integral) +
                move_position_log_prior_ratio(lo, s_old, s_new, hi);
  return out;
}

template <class RateT>
typename RjChain<RateT>::MoveOutcome RjChain<RateT>::change_value_outcome(int segment,
                                                                          double v_new) const {
  MoveOutcome out;
  const auto& val = seg_values(rate_);
  const int k = static_cast<int>(seg_positions(rate_).size());
  if (segment < 0 || segment > k) return out;
  if (!(v_new > 0.0) || !std::isfinite(v_new)) return out;
  const double v_old = val[segment];
  out.ok = true;
  out.segment = segment;
  out.value_left = v_new;

  if (!prior_only_) {
    if constexpr (std::is_same_v<RateT, StepRate>) {
      const double lo = seg_boundary(rate_, segment), hi = seg_boundary(rate_, segment + 1);
      const long cnt = count_infections(lo, hi);
      out.d_log_product = cnt * (std::log(v_new) - std::log(v_old));
      out.d_integral = (v_new - v_old) * (hi - lo);
    } else {
      // only the basis paired with this coefficient changes
      const double lo = rate_.knot(segment + 1), hi = rate_.knot(segment + 4);
      auto v = val;
      v[segment] = v_new;
      const RateT cand = remake(rate_, seg_positions(rate_), std::move(v));
      out.d_log_product = delta_log_product_over(cand, lo, hi);
      out.d_integral = (v_new - v_old) * (hi - lo) / 3.0;
    }
  }
  const double ratio =
      prior_.variant == HeightPrior::independent
          ? change_value_log_ratio_independent(v_old, v_new, prior_.kappa, mu_)
          : change_value_log_ratio_martingale(val, segment, v_new, prior_);
  out.log_acc = (out.d_log_product - out.d_integral) + ratio;
  return out;
}

template <class RateT>
typename RjChain<RateT>::MoveOutcome RjChain<RateT>::first_infection_outcome(
    double t_new) const {
  MoveOutcome out;
  if (prior_only_ || n_ < 1) return out;
  const auto& pos = seg_positions(rate_);
  const int k = static_cast<int>(pos.size());
  const double t0 = latents_.first_infection();
  const double R = rate_.support_end();
  const double second = n_ >= 2 ? sorted_inf_[1] : kPosInf;
  if constexpr (std::is_same_v<RateT, StepRate>) {
    const double s1 = k > 0 ? pos[0] : R;  // no changepoint: the interval runs to R_n
    if (!(t_new < std::min(second, s1))) return out;
    out.ok = true;
    out.d_integral = seg_values(rate_)[0] * (t0 - t_new);
    out.log_acc = std::log(s1 - t_new) - std::log(s1 - t0) +
                  (2.0 * k + 1.0) * (std::log(R - t0) - std::log(R - t_new));
  } else {
    const double t3 = rate_.knot(3);  // equals R_n when there is no interior knot
    if (!(t_new < std::min(second, t3))) return out;
    out.ok = true;
    const RateT cand = rate_.with_support_begin(t_new);
    // (t0, R] still separates omega's infection from all the others
    out.d_log_product = log_product_over(cand, t0, R) - log_product_;
    out.d_integral = cand.integral() - integral_;
    out.log_acc = out.d_log_product - out.d_integral + std::log(t3 - t_new) -
                  std::log(t3 - t0) +
                  (2.0 * k + 1.0) * (std::log(R - t0) - std::log(R - t_new));
  }
  return out;
}

// ---------------------------------------------------------------------------
// randomized sweeps

template <class RateT>
void RjChain<RateT>::commit_rate(RateT&& cand, const MoveOutcome& out) {
  rate_ = std::move(cand);
  log_product_ += out.d_log_product;
  integral_ += out.d_integral;
}

template <class RateT>
void RjChain<RateT>::attempt_birth() {
  ++stats_.birth_attempts;
  const double s_star = rng_.uniform(rate_.support_begin(), rate_.support_end());
  const double u = rng_.uniform_open();
  const MoveOutcome out = birth_outcome(s_star, u);
  if (!out.ok) return;
  if (!(std::log(rng_.uniform_open()) < out.log_acc)) return;
  auto pos = seg_positions(rate_);
  auto val = seg_values(rate_);
  pos.insert(pos.begin() + out.segment, s_star);
  val[out.segment] = out.value_left;
  val.insert(val.begin() + out.segment + 1, out.value_right);
  commit_rate(remake(rate_, std::move(pos), std::move(val)), out);
  ++stats_.birth_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_death() {
  const int k = static_cast<int>(seg_positions(rate_).size());
  if (k == 0) return;
  ++stats_.death_attempts;
  const int idx = static_cast<int>(rng_.uniform_index(k));
  const MoveOutcome out = death_outcome(idx);
  if (!out.ok) return;
  if (!(std::log(rng_.uniform_open()) < out.log_acc)) return;
  auto pos = seg_positions(rate_);
  auto val = seg_values(rate_);
  pos.erase(pos.begin() + idx);
  val[idx] = out.value_left;
  val.erase(val.begin() + idx + 1);
  commit_rate(remake(rate_, std::move(pos), std::move(val)), out);
  ++stats_.death_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_move_position() {
  const int k = static_cast<int>(seg_positions(rate_).size());
  if (k == 0) return;
  ++stats_.move_attempts;
  const int idx = static_cast<int>(rng_.uniform_index(k));
  const double lo = seg_boundary(rate_, idx), hi = seg_boundary(rate_, idx + 2);
  const double s_new = rng_.uniform(lo, hi);
  const MoveOutcome out = move_position_outcome(idx, s_new);
  if (!out.ok) return;
  if (!(std::log(rng_.uniform_open()) < out.log_acc)) return;
  auto pos = seg_positions(rate_);
  pos[idx] = s_new;
  commit_rate(remake(rate_, std::move(pos), seg_values(rate_)), out);
  ++stats_.move_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_change_value() {
  const int k = static_cast<int>(seg_positions(rate_).size());
  ++stats_.value_attempts;
  const int j = static_cast<int>(rng_.uniform_index(k + 1));
  const double v_new = seg_values(rate_)[j] * std::exp(rng_.uniform(-0.5, 0.5));
  const MoveOutcome out = change_value_outcome(j, v_new);
  if (!out.ok) return;
  if (!(std::log(rng_.uniform_open()) < out.log_acc)) return;
  auto val = seg_values(rate_);
  val[j] = v_new;
  commit_rate(remake(rate_, seg_positions(rate_), std::move(val)), out);
  ++stats_.value_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_infection_update() {
  if (n_ < 2) return;
  ++stats_.infection_attempts;
  const auto r = rng_.uniform_index(static_cast<std::uint64_t>(n_) - 1);
  const int idx = static_cast<int>(r) >= latents_.omega ? static_cast<int>(r) + 1
                                                        : static_cast<int>(r);
  const double t0 = latents_.first_infection();
  const double upper = data_[idx] - t0;
  const double t_new = data_[idx] - rng_.truncated_exponential(gamma_, upper);
  const double t_old = latents_.infection[idx];
  const double h_new = rate_.left_limit(t_new);
  if (!(h_new > 0.0)) return;
  const double log_acc = std::log(h_new) - std::log(rate_.left_limit(t_old));
  if (!(std::log(rng_.uniform_open()) < log_acc)) return;
  if (!chi_valid_after_move(sorted_inf_, data_.times(), t_old, t_new)) return;
  // commit: keep the sorted mirror in sync
  const auto it_old = std::lower_bound(sorted_inf_.begin(), sorted_inf_.end(), t_old);
  sorted_inf_.erase(it_old);
  sorted_inf_.insert(std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), t_new), t_new);
  latents_.infection[idx] = t_new;
  sum_periods_ += t_old - t_new;
  log_product_ += log_acc;  // same quantity: log h(new) - log h(old)
  ++stats_.infection_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_first_infection() {
  if (prior_only_ || n_ < 1) return;
  ++stats_.first_attempts;
  const auto& pos = seg_positions(rate_);
  const double R = rate_.support_end();
  const double second = n_ >= 2 ? sorted_inf_[1] : kPosInf;
  double bound, proposal_rate;
  if constexpr (std::is_same_v<RateT, StepRate>) {
    bound = pos.empty() ? R : pos[0];
    proposal_rate = cfg_.theta + gamma_ + seg_values(rate_)[0];
  } else {
    bound = rate_.knot(3);
    proposal_rate = cfg_.theta + gamma_;
  }
  const double m = std::min(second, bound);
  const double t_new = m - rng_.exponential(proposal_rate);
  const MoveOutcome out = first_infection_outcome(t_new);
  if (!out.ok) return;
  if (!(std::log(rng_.uniform_open()) < out.log_acc)) return;
  const double t0 = latents_.first_infection();
  rate_ = rate_.with_support_begin(t_new);
  log_product_ += out.d_log_product;
  integral_ += out.d_integral;
  sum_periods_ += t0 - t_new;
  sorted_inf_[0] = t_new;
  latents_.infection[latents_.omega] = t_new;
  ++stats_.first_accepts;
}

template <class RateT>
void RjChain<RateT>::attempt_omega_swap() {
  if (prior_only_ || n_ < 1) return;
  ++stats_.omega_attempts;
  const double r_omega = data_[latents_.omega];
  std::vector<int> candidates;
  candidates.reserve(n_);
  for (int i = 0; i < n_; ++i)
    if (latents_.infection[i] < r_omega) candidates.push_back(i);
  const int c = candidates[rng_.uniform_index(candidates.size())];
  if (c == latents_.omega) return;
  // swap of times leaves the time multiset, chi and every cached term intact
  std::swap(latents_.infection[latents_.omega], latents_.infection[c]);
  latents_.omega = c;
  ++stats_.omega_swaps;
  assert(latents_.infection[c] < data_[c]);
}

template <class RateT>
void RjChain<RateT>::gibbs_gamma() {
  gamma_ = rng_.gamma(cfg_.kappa_gamma + n_, cfg_.mu_gamma + sum_periods_);
}

template <class RateT>
void RjChain<RateT>::gibbs_mu() {
  const auto& val = seg_values(rate_);
  double sum = 0.0;
  for (double v : val) sum += v;
  mu_ = rng_.gamma(prior_.a + static_cast<double>(val.size()) * prior_.kappa,
                   prior_.b + sum);
}

template <class RateT>
void RjChain<RateT>::iterate() {
  ++iter_;
  if (!prior_only_) gibbs_gamma();
  const int k = static_cast<int>(seg_positions(rate_).size());
  const double u = rng_.uniform();
  if (u < sched_.birth(k)) {
    attempt_birth();
  } else if (u < sched_.birth(k) + sched_.death(k)) {
    attempt_death();
  } else {
    for (int r = 0; r < cfg_.within_model_repeats; ++r) {
      attempt_move_position();
      attempt_change_value();
    }
  }
  if (!prior_only_) {
    const int updates = cfg_.infection_updates > 0 ? cfg_.infection_updates
                                                   : std::max(1, n_ / 10);
    for (int i = 0; i < updates; ++i) attempt_infection_update();
    attempt_first_infection();
    attempt_omega_swap();
    if (prior_.variant == HeightPrior::independent) gibbs_mu();
    if (cfg_.consistency_interval > 0 && iter_ % cfg_.consistency_interval == 0)
      refresh_caches(true);
  }
}

template <class RateT>
PosteriorSample RjChain<RateT>::make_sample() const {
  PosteriorSample s;
  s.iter = iter_;
  s.gamma = gamma_;
  s.mu = mu_;
  s.has_mu = prior_.variant == HeightPrior::independent;
  s.loglik = prior_only_ ? 0.0 : cached_log_likelihood();
  s.omega = latents_.omega;
  s.first_infection = prior_only_ ? rate_.support_begin() : latents_.first_infection();
  if (cfg_.emit_latents && !prior_only_) s.infection = latents_.infection;
  if constexpr (std::is_same_v<RateT, StepRate>) {
    s.rate = StepRateSample{rate_.support_begin(), rate_.support_end(),
                            rate_.changepoints(), rate_.heights()};
  } else {
    s.rate = SplineRateSample{rate_.support_begin(), rate_.support_end(),
                              rate_.interior_knots(), rate_.free_coeffs()};
  }
  return s;
}

template <class RateT>
void RjChain<RateT>::run(const SampleSink& sink) {
  for (long long i = 0; i < cfg_.iterations; ++i) {
    iterate();
    if (iter_ > cfg_.burn_in && (iter_ - cfg_.burn_in) % cfg_.thin == 0) {
      if (sink && !sink(make_sample())) break;
    }
  }
}

template class RjChain<StepRate>;
template class RjChain<SplineRate>;

}  // namespace epirate
